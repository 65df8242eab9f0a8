#include "twofluid/explicit_stage.hpp"

#include <vector>

namespace twofluid {

WaveSpeeds wave_speeds(const State& q, const Vec2& n) {
    WaveSpeeds s;
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho;
    const Vec2 v = q.mom / rho;
    s.lam0 = 0.0;
    s.lam_v = v.dot(n);
    s.lam_w = (v + (1.0 - 2.0 * y1) * q.w).dot(n);
    return s;
}

Vec8 flux_ex(const State& q, const MixtureEOS& eos, int axis) {
    (void)eos;
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho, y2 = q.m2 / rho;
    const Vec2 v = q.mom / rho;
    const Vec2 v1 = v + y2 * q.w;
    const Vec2 v2 = v - y1 * q.w;
    // gradient potential of the w equation
    const double phi = q.w.dot(v) + (1.0 - 2.0 * y1) * 0.5 * q.w.squaredNorm();

    Vec8 F = Vec8::Zero();
    F[CAlpha] = 0.0;
    F[CM1] = q.m1 * v1[axis];
    F[CM2] = q.m2 * v2[axis];
    F[CMomX] = rho * v[axis] * v.x();
    F[CMomY] = rho * v[axis] * v.y();
    F[CWX] = axis == 0 ? phi : 0.0;
    F[CWY] = axis == 1 ? phi : 0.0;
    F[CE] = rho * phi * y1 * y2 * q.w[axis];
    return F;
}

Vec8 rusanov_flux(const State& qL, const State& qR, const MixtureEOS& eos, int axis,
                  bool alpha_dissipation) {
    Vec2 n = Vec2::Zero();
    n[axis] = 1.0;
    const double s = std::max(wave_speeds(qL, n).max_abs(), wave_speeds(qR, n).max_abs());
    Vec8 F = 0.5 * (flux_ex(qL, eos, axis) + flux_ex(qR, eos, axis));
    Vec8 jump = state_to_vec(qR) - state_to_vec(qL);
    if (!alpha_dissipation) jump[CAlpha] = 0.0;
    F -= 0.5 * s * jump;
    return F;
}

Vec8 nonconservative_D(const State& qL, const State& qR, const MixtureEOS& eos, int axis) {
    (void)eos;
    const State qm = vec_to_state(0.5 * (state_to_vec(qL) + state_to_vec(qR)));
    const double rho = qm.m1 + qm.m2;
    const Vec2 v = qm.mom / rho;

    Vec8 D = Vec8::Zero();
    D[CAlpha] = 0.5 * v[axis] * (qR.alpha1 - qL.alpha1);
    // (curl w) x v: only the cross-axis w component differentiates along this axis
    const double dchi = axis == 0 ? (qR.w.y() - qL.w.y()) : -(qR.w.x() - qL.w.x());
    D[CWX] = 0.5 * dchi * (-v.y());
    D[CWY] = 0.5 * dchi * (v.x());
    return D;
}

Vec8 nonconservative_B(const State& q, const Eigen::Matrix<double, 8, 2>& grad_q) {
    const double rho = q.m1 + q.m2;
    const Vec2 v = q.mom / rho;
    Vec8 out = Vec8::Zero();
    out[CAlpha] = v.x() * grad_q(CAlpha, 0) + v.y() * grad_q(CAlpha, 1);
    const double chi = grad_q(CWY, 0) - grad_q(CWX, 1);  // curl of w
    out[CWX] = chi * (-v.y());
    out[CWY] = chi * (v.x());
    return out;
}

namespace {

// primitive set used for reconstruction: alpha1, rho1, rho2, vx, vy, wx, wy, T
using PrimVec = Eigen::Matrix<double, 8, 1>;

PrimVec prim_vec(const State& q, const MixtureEOS& eos) {
    const Primitives p = to_primitives(q, eos);
    PrimVec u;
    u << q.alpha1, p.rho1, p.rho2, p.v.x(), p.v.y(), q.w.x(), q.w.y(), p.T;
    return u;
}

State prim_to_state(const PrimVec& u, const MixtureEOS& eos) {
    return make_state(u[0], u[1], u[2], Vec2(u[3], u[4]), Vec2(u[5], u[6]), u[7], eos);
}

}  // namespace

void fv_rhs(const Field& f, const MixtureEOS& eos, const FluxModel& model, int order,
            Field& rhs, double scale) {
    const Grid& g = f.grid;
    const int ext = order >= 2 ? 2 : 1;  // stencil reach into ghosts

    // cell primitives on interior plus the in-axis ghost bands (corner ghosts
    // are never touched by the axis-aligned stencils)
    std::vector<PrimVec> prim(static_cast<size_t>(g.total()));
    for (int j = 0; j < g.ny; ++j)
        for (int i = -ext; i < g.nx + ext; ++i)
            prim[g.idx(i, j)] = prim_vec(f.get(i, j), eos);
    if (g.dims == 2) {
        for (int k = 1; k <= ext; ++k)
            for (int i = 0; i < g.nx; ++i) {
                prim[g.idx(i, -k)] = prim_vec(f.get(i, -k), eos);
                prim[g.idx(i, g.ny + k - 1)] = prim_vec(f.get(i, g.ny + k - 1), eos);
            }
    }

    // At second order the reconstructed face jumps are O(dx^2), so the smooth
    // part of the nonconservative products is carried by an in-cell volume
    // term B(q_i) grad(q_i) built from the limited slopes; the face terms
    // keep only the limiter leftovers and genuine discontinuities.
    if (order >= 2) {
        Eigen::ArrayXd* arr[8] = {&rhs.alpha1, &rhs.m1, &rhs.m2, &rhs.momx,
                                  &rhs.momy,   &rhs.wx, &rhs.wy, &rhs.rhoE};
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int k = g.idx(i, j);
                Eigen::Matrix<double, 8, 2> grad = Eigen::Matrix<double, 8, 2>::Zero();
                for (int axis = 0; axis < g.dims; ++axis) {
                    const double h = axis == 0 ? g.dx : g.dy;
                    const int km = axis == 0 ? g.idx(i - 1, j) : g.idx(i, j - 1);
                    const int kp = axis == 0 ? g.idx(i + 1, j) : g.idx(i, j + 1);
                    for (int c : {static_cast<int>(CAlpha), static_cast<int>(CWX),
                                  static_cast<int>(CWY)}) {
                        grad(c, axis) =
                            minmod(prim[k][c] - prim[km][c], prim[kp][c] - prim[k][c]) / h;
                    }
                }
                const Vec8 Bq = nonconservative_B(f.get(i, j), grad);
                for (int c = 0; c < 8; ++c) (*arr[c])[k] -= scale * Bq[c];
            }
        }
    }

    auto sweep = [&](int axis) {
        const double h = axis == 0 ? g.dx : g.dy;
        const int n_axis = axis == 0 ? g.nx : g.ny;
        const int n_other = axis == 0 ? g.ny : g.nx;
        for (int jo = 0; jo < n_other; ++jo) {
            for (int fi = 0; fi <= n_axis; ++fi) {
                // face between cells (fi-1) and (fi) along the axis
                auto cell = [&](int c) { return axis == 0 ? g.idx(c, jo) : g.idx(jo, c); };
                const int kL = cell(fi - 1), kR = cell(fi);
                State qL, qR;
                if (order >= 2) {
                    const int kLL = cell(fi - 2), kRR = cell(fi + 1);
                    PrimVec uL, uR;
                    for (int c = 0; c < 8; ++c) {
                        uL[c] = minmod_reconstruct(prim[kLL][c], prim[kL][c], prim[kR][c]).second;
                        uR[c] = minmod_reconstruct(prim[kL][c], prim[kR][c], prim[kRR][c]).first;
                    }
                    qL = prim_to_state(uL, eos);
                    qR = prim_to_state(uR, eos);
                } else {
                    qL = prim_to_state(prim[kL], eos);
                    qR = prim_to_state(prim[kR], eos);
                }

                const double s = std::max(model.max_speed(qL, axis), model.max_speed(qR, axis));
                Vec8 jump = state_to_vec(qR) - state_to_vec(qL);
                if (!model.alpha_dissipation()) jump[CAlpha] = 0.0;
                const Vec8 F = 0.5 * (model.flux(qL, axis) + model.flux(qR, axis)) - 0.5 * s * jump;
                const Vec8 D = nonconservative_D(qL, qR, eos, axis);

                const double coef = scale / h;
                auto add = [&](int k, const Vec8& dv) {
                    Eigen::ArrayXd* arr[8] = {&rhs.alpha1, &rhs.m1, &rhs.m2, &rhs.momx,
                                              &rhs.momy,   &rhs.wx, &rhs.wy, &rhs.rhoE};
                    for (int c = 0; c < 8; ++c) (*arr[c])[k] += dv[c];
                };
                // conservative part: leaves cell L, enters cell R
                if (fi > 0) add(kL, -coef * (F + D));
                if (fi < n_axis) add(kR, coef * (F - D));
            }
        }
    };

    sweep(0);
    if (g.dims == 2) sweep(1);
}

Field explicit_update(const Field& f, const MixtureEOS& eos, double dt, int order,
                      bool alpha_dissipation) {
    Field rhs(f.grid);
    ExplicitFluxModel model(eos, alpha_dissipation);
    fv_rhs(f, eos, model, order, rhs);
    Field out = f;
    auto dst = out.components();
    auto src = rhs.components();
    for (int c = 0; c < 8; ++c) *dst[c] += dt * (*src[c]);
    check_field_admissible(out, eos, "explicit_update");
    return out;
}

}  // namespace twofluid
