#include "twofluid/implicit_stage.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <sstream>

namespace twofluid {

ReferenceState ReferenceState::from_field(const Field& f, const MixtureEOS& eos) {
    double sum_a1 = 0, sum_a2 = 0, sum_m1 = 0, sum_m2 = 0;
    double sum_rhoe = 0, sum_cv = 0;
    f.for_interior([&](int i, int j) {
        const State q = f.get(i, j);
        sum_a1 += q.alpha1;
        sum_a2 += 1.0 - q.alpha1;
        sum_m1 += q.m1;
        sum_m2 += q.m2;
        sum_rhoe += q.rhoE - rho_ekin(q);
        sum_cv += q.m1 * eos.phase1.cv + q.m2 * eos.phase2.cv;
    });
    const double rho1 = sum_m1 / sum_a1;
    const double rho2 = sum_m2 / sum_a2;
    const double T = sum_rhoe / sum_cv;
    return from_constants(rho1, rho2, T, eos);
}

MuSplit linearize_mu(const State& q, const ReferenceState& rs, const MixtureEOS& eos) {
    check_admissible(q, eos, "linearize_mu");
    const double a1 = q.alpha1, a2 = 1.0 - a1;
    const ThermoEval th_rs = eval_thermo(a1, rs.rho1_rs, rs.rho2_rs, rs.T_rs, eos);
    MuSplit out;
    out.dmu_rs = dmu_dE(th_rs, a1, a2, rs.rho1_rs, rs.rho2_rs, eos);
    const double mu_rs = mu_diff(th_rs, eos);
    out.mu_hat_rs = mu_rs - out.dmu_rs * rs.rhoE_rs(q);
    const ThermoEval th = eval_thermo(q, eos);
    out.mu_bar = mu_diff(th, eos) - out.mu_hat_rs - out.dmu_rs * q.rhoE;
    return out;
}

// ---------------------------------------------------------------------------
// GMRES(m) with Jacobi right-preconditioning
// ---------------------------------------------------------------------------

LinearSolveResult solve_energy(const EllipticSystem& sys) {
    using Eigen::VectorXd;
    const auto& A = sys.matrix;
    const VectorXd& b = sys.rhs;
    const int n = static_cast<int>(b.size());
    const SolverControls& sc = sys.controls;
    const double tol = std::max(sc.rtol * b.norm(), sc.atol);

    VectorXd dinv(n);
    for (int i = 0; i < n; ++i) {
        const double d = A.coeff(i, i);
        dinv[i] = d != 0.0 ? 1.0 / d : 1.0;
    }

    VectorXd x = b;  // dt -> 0 limit of the solution
    std::vector<double> history;
    int total_iters = 0;
    const int m = std::max(1, sc.restart);

    while (true) {
        VectorXd r = b - A * x;
        double beta = r.norm();
        history.push_back(beta);
        if (beta <= tol) return {x, total_iters, beta};
        if (total_iters >= sc.max_iter) break;

        Eigen::MatrixXd V(n, m + 1);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
        VectorXd cs = VectorXd::Zero(m), sn = VectorXd::Zero(m);
        VectorXd g = VectorXd::Zero(m + 1);
        V.col(0) = r / beta;
        g[0] = beta;

        int k = 0;
        bool breakdown = false;
        for (; k < m && total_iters < sc.max_iter; ++k) {
            VectorXd z = dinv.asDiagonal() * V.col(k);
            VectorXd w = A * z;
            for (int i = 0; i <= k; ++i) {
                H(i, k) = w.dot(V.col(i));
                w -= H(i, k) * V.col(i);
            }
            H(k + 1, k) = w.norm();
            if (H(k + 1, k) > 1e-300) V.col(k + 1) = w / H(k + 1, k);
            else breakdown = true;

            for (int i = 0; i < k; ++i) {
                const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
                H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
                H(i, k) = t;
            }
            const double denom = std::hypot(H(k, k), H(k + 1, k));
            cs[k] = denom > 0 ? H(k, k) / denom : 1.0;
            sn[k] = denom > 0 ? H(k + 1, k) / denom : 0.0;
            H(k, k) = denom;
            H(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];

            ++total_iters;
            history.push_back(std::abs(g[k + 1]));
            if (std::abs(g[k + 1]) <= tol || breakdown) {
                ++k;
                break;
            }
        }
        // solve the small triangular system and update x
        VectorXd y(k);
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
            y[i] = s / H(i, i);
        }
        for (int j = 0; j < k; ++j) x += y[j] * (dinv.asDiagonal() * V.col(j));
    }

    std::ostringstream msg;
    msg << "solve_energy: GMRES failed to reach tol=" << tol << " after " << total_iters
        << " iterations; residual history tail:";
    const size_t from = history.size() > 8 ? history.size() - 8 : 0;
    for (size_t i = from; i < history.size(); ++i) msg << " " << history[i];
    throw NonConvergenceError(msg.str());
}

// ---------------------------------------------------------------------------
// Pressure relaxation of the volume fraction (backward Euler + safeguarded Newton)
// ---------------------------------------------------------------------------

double relax_alpha_cell(const State& q, double dt, const MixtureEOS& eos, int* newton_iters) {
    if (std::isinf(eos.tau_alpha) || dt == 0.0) {
        if (newton_iters) *newton_iters = 0;
        return q.alpha1;
    }
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho, y2 = q.m2 / rho;
    const double rhoe = q.rhoE - rho_ekin(q);
    const double T = rhoe / (q.m1 * eos.phase1.cv + q.m2 * eos.phase2.cv);
    // p1 - p2 = rho T (a1c/alpha - a2c/(1-alpha)) at fixed masses
    const double a1c = (eos.phase1.gamma - 1) * eos.phase1.cv * y1;
    const double a2c = (eos.phase2.gamma - 1) * eos.phase2.cv * y2;
    const double c = dt * T / eos.tau_alpha;
    const double astar = q.alpha1;

    auto R = [&](double a) { return a - astar - c * (a1c / a - a2c / (1.0 - a)); };
    auto dR = [&](double a) {
        return 1.0 + c * (a1c / (a * a) + a2c / ((1.0 - a) * (1.0 - a)));
    };
    // in the stiff regime R carries the scale c/alpha, so the residual target
    // is measured against the term magnitudes (reduces to 1e-12 for c -> 0)
    auto tol_at = [&](double a) { return 1e-12 * (1.0 + c * (a1c / a + a2c / (1.0 - a))); };

    double lo = kAlphaFloor, hi = 1.0 - kAlphaFloor;
    if (!(R(lo) <= 0.0) || !(R(hi) >= 0.0))
        throw NonConvergenceError("relax_alpha: root not bracketed (inadmissible input?)");
    double x = std::min(std::max(astar, lo), hi);
    int it = 0;
    for (; it < 100; ++it) {
        const double rx = R(x);
        if (std::abs(rx) <= tol_at(x)) break;
        if (rx > 0) hi = x;
        else lo = x;
        double step = rx / dR(x);
        double xn = x - step;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);  // bisection fallback
        x = xn;
    }
    if (std::abs(R(x)) > tol_at(x))
        throw NonConvergenceError("relax_alpha: Newton/bisection did not converge, |R|=" +
                                  std::to_string(std::abs(R(x))));
    if (newton_iters) *newton_iters = it;
    return x;
}

// ---------------------------------------------------------------------------
// Coefficients and assembly
// ---------------------------------------------------------------------------

struct ImplicitStage::Coefficients {
    // per cell over the full ghosted box
    Eigen::ArrayXd g1, h1, g2, h2, damp;
    Eigen::ArrayXd muhat, mubar, kin_old, krs, ekin_p;
    Eigen::ArrayXd fx, fy;      // g1 * rhov*  (centered energy flux vector)
    Eigen::ArrayXd wfx, wfy;    // g2 * w^(1)
    Eigen::ArrayXd y1y2_star;   // (y1 y2)^{n+1}
    Eigen::ArrayXd rym_star;    // (rho y1 y2)^{n+1}
};

void ImplicitStage::compute_coefficients(const Field& f_star, const Field& f_old, double dt,
                                         Coefficients& c) const {
    const Grid& g = f_star.grid;
    const int n = g.total();
    for (Eigen::ArrayXd* a :
         {&c.g1, &c.h1, &c.g2, &c.h2, &c.damp, &c.muhat, &c.mubar, &c.kin_old, &c.krs,
          &c.ekin_p, &c.fx, &c.fy, &c.wfx, &c.wfy, &c.y1y2_star, &c.rym_star})
        a->setZero(n);

    // pass 1: pointwise coefficients everywhere (ghosts included)
    const int gy = g.gy();
    for (int j = -gy; j < g.ny + gy; ++j) {
        for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
            const int k = g.idx(i, j);
            const State qo = f_old.get(i, j);
            const State qs = f_star.get(i, j);
            const Primitives po = to_primitives(qo, eos_);
            const ThermoEval th = eval_thermo(qo.alpha1, po.rho1, po.rho2, po.T, eos_);
            const double rho_star = qs.m1 + qs.m2;
            const double y1s = qs.m1 / rho_star, y2s = qs.m2 / rho_star;

            c.h1[k] = phi_p(qo.alpha1, 1.0 - qo.alpha1, po.rho1, po.rho2, eos_) - 1.0;
            c.g1[k] = (qo.rhoE + th.p_mix) / rho_star;
            c.y1y2_star[k] = y1s * y2s;
            c.rym_star[k] = rho_star * y1s * y2s;
            c.damp[k] = std::isinf(eos_.tau_w)
                            ? 1.0
                            : eos_.tau_w / (eos_.tau_w + dt * c.y1y2_star[k]);
            const double mu_old = mu_diff(th, eos_);
            c.g2[k] = mu_old * c.rym_star[k] * c.damp[k];

            const MuSplit ms = linearize_mu(qo, rs_, eos_);
            c.h2[k] = ms.dmu_rs;
            c.muhat[k] = ms.mu_hat_rs;
            c.mubar[k] = ms.mu_bar;
            c.kin_old[k] = rho_ekin(qo);
            // h2 * rhoE_RS - mu_bar: the K-operator argument with the
            // (dmu_RS)^{-1} factor cancelled analytically
            c.krs[k] = ms.dmu_rs * rs_.rhoE_rs(qo) - ms.mu_bar;
            c.ekin_p[k] = cfg_.kin_energy_from_star ? rho_ekin(qs) : c.kin_old[k];
            c.wfx[k] = c.g2[k] * qs.w.x();
            c.wfy[k] = c.g2[k] * qs.w.y();
        }
    }

    // pass 2: rhov* = rhov^(1) - dt div_c((rho y1 y2)^{n+1} w^n (x) w^n),
    // then the centered energy-flux vector g1 rhov*.
    auto stress = [&](int i, int j, double& sxx, double& sxy, double& syy) {
        const int k = g.idx(i, j);
        const Vec2 w(f_old.wx[k], f_old.wy[k]);
        sxx = c.rym_star[k] * w.x() * w.x();
        sxy = c.rym_star[k] * w.x() * w.y();
        syy = c.rym_star[k] * w.y() * w.y();
    };
    const int band = 1;  // rhov* needed on one ghost ring
    const int jb = g.dims == 2 ? band : 0;
    for (int j = -jb; j < g.ny + jb; ++j) {
        for (int i = -band; i < g.nx + band; ++i) {
            const int k = g.idx(i, j);
            double sxx_p, sxy_p, syy_p, sxx_m, sxy_m, syy_m;
            stress(i + 1, j, sxx_p, sxy_p, syy_p);
            stress(i - 1, j, sxx_m, sxy_m, syy_m);
            double divx = (sxx_p - sxx_m) / (2 * g.dx);
            double divy = (sxy_p - sxy_m) / (2 * g.dx);
            if (g.dims == 2) {
                stress(i, j + 1, sxx_p, sxy_p, syy_p);
                stress(i, j - 1, sxx_m, sxy_m, syy_m);
                divx += (sxy_p - sxy_m) / (2 * g.dy);
                divy += (syy_p - syy_m) / (2 * g.dy);
            }
            const double rvx = f_star.momx[k] - dt * divx;
            const double rvy = f_star.momy[k] - dt * divy;
            c.fx[k] = c.g1[k] * rvx;
            c.fy[k] = c.g1[k] * rvy;
        }
    }
}

namespace {

struct FaceNeighbor {
    int cell_index;  // flat index into the ghosted arrays
    int column;      // matrix column, or -1 at a non-periodic boundary
    BC bc = BC::Periodic;
};

// Neighbor of interior cell (i,j) across the face along `axis` in direction
// `dir`; resolves periodic wrap to an interior column.
FaceNeighbor face_neighbor(const Grid& g, int i, int j, int axis, int dir) {
    int ni = i + (axis == 0 ? dir : 0);
    int nj = j + (axis == 1 ? dir : 0);
    FaceNeighbor fn{g.idx(ni, nj), -1, BC::Periodic};
    const bool inside = axis == 0 ? (ni >= 0 && ni < g.nx) : (nj >= 0 && nj < g.ny);
    if (inside) {
        fn.column = nj * g.nx + ni;
        return fn;
    }
    const Side side = axis == 0 ? (dir < 0 ? XLo : XHi) : (dir < 0 ? YLo : YHi);
    fn.bc = g.bc[side];
    if (fn.bc == BC::Periodic) {
        const int wi = axis == 0 ? (ni + g.nx) % g.nx : ni;
        const int wj = axis == 1 ? (nj + g.ny) % g.ny : nj;
        fn.column = wj * g.nx + wi;
    }
    return fn;
}

}  // namespace

EllipticSystem ImplicitStage::assemble_energy_system(const Field& f_star, const Field& f_old,
                                                     double dt) const {
    Coefficients c;
    compute_coefficients(f_star, f_old, dt, c);
    return assemble_impl(c, f_star, dt);
}

EllipticSystem ImplicitStage::assemble_impl(const Coefficients& c, const Field& f_star,
                                            double dt) const {
    const Grid& g = f_star.grid;
    const int n = g.nx * g.ny;
    EllipticSystem sys;
    sys.controls = cfg_.solver;
    sys.rhs.resize(n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(n) * (1 + 2 * g.dims));
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd offsum = Eigen::VectorXd::Zero(n);

    const double dt2 = dt * dt;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int row = j * g.nx + i;
            const int k = g.idx(i, j);
            double rhs = f_star.rhoE[k];

            for (int axis = 0; axis < g.dims; ++axis) {
                const double h = axis == 0 ? g.dx : g.dy;
                for (int dir = -1; dir <= 1; dir += 2) {
                    const FaceNeighbor fn = face_neighbor(g, i, j, axis, dir);
                    const int kn = fn.cell_index;

                    // first-order centered divergence terms (energy flux and
                    // the g2 w^(1) flux) use ghost data on all boundary types
                    const double fI = axis == 0 ? c.fx[k] + c.wfx[k] : c.fy[k] + c.wfy[k];
                    const double fK = axis == 0 ? c.fx[kn] + c.wfx[kn] : c.fy[kn] + c.wfy[kn];
                    rhs -= dt / h * dir * 0.5 * (fI + fK);

                    // boundary closure of the dt^2 stencil: exact-ghost rows
                    // where Dirichlet data exists, homogeneous Neumann else
                    const bool dirichlet_face =
                        fn.column < 0 && fn.bc == BC::DirichletExact &&
                        cfg_.closure == EllipticClosure::DirichletGhost;
                    if (fn.column < 0 && !dirichlet_face) continue;

                    const double G1 = 0.5 * (c.g1[k] + c.g1[kn]);
                    const double G2 = 0.5 * (c.g2[k] + c.g2[kn]);
                    const double w1 = dt2 / (h * h) * G1;
                    const double w2 = dt2 / (h * h) * G2;

                    // dt^2 L(rhoE_kin^n) and dt^2 K(h2 rhoE_RS - mu_bar)
                    rhs += dt2 / (h * h) *
                           (G1 * (c.h1[kn] * c.kin_old[kn] - c.h1[k] * c.kin_old[k]) +
                            G2 * (c.krs[kn] - c.krs[k])) *
                           -1.0;

                    const double a_diag = w1 * c.h1[k] + w2 * c.h2[k];
                    const double a_off = -(w1 * c.h1[kn] + w2 * c.h2[kn]);
                    diag[row] += a_diag;
                    if (fn.column >= 0) {
                        trip.emplace_back(row, fn.column, a_off);
                        offsum[row] += std::abs(a_off);
                    } else {
                        // DirichletGhost closure: the neighbor value is known
                        rhs -= a_off * f_star.rhoE[kn];
                    }
                }
            }
            sys.rhs[row] = rhs;
        }
    }
    for (int row = 0; row < n; ++row) trip.emplace_back(row, row, diag[row]);

    for (int row = 0; row < n; ++row) {
        if (!(diag[row] > offsum[row] * (1.0 - 1e-12)))
            throw std::logic_error(
                "assemble_energy_system: matrix not strictly diagonally dominant at row " +
                std::to_string(row) + " (diag=" + std::to_string(diag[row]) +
                ", offsum=" + std::to_string(offsum[row]) + ")");
    }

    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(trip.begin(), trip.end());
    return sys;
}

Field ImplicitStage::advance(const Field& f_star, const Field& f_old, double dt,
                             const BoundarySampler& sampler, ImplicitStats* stats) const {
    const Grid& g = f_star.grid;
    Coefficients c;
    compute_coefficients(f_star, f_old, dt, c);

    EllipticSystem sys = assemble_impl(c, f_star, dt);
    LinearSolveResult sol = solve_energy(sys);
    if (stats) {
        stats->gmres_iterations = sol.iterations;
        stats->gmres_residual = sol.residual;
    }

    Field res = f_star;
    res.grid = g;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) res.rhoE[g.idx(i, j)] = sol.x[j * g.nx + i];
    apply_bc(res, sampler);

    // mu^{n+1} = dmu_RS^n rhoE^{n+1} + mu_hat_RS^n + mu_bar^n on one ghost ring
    const int band = 1;
    const int jb = g.dims == 2 ? band : 0;
    Eigen::ArrayXd mu_new = Eigen::ArrayXd::Zero(g.total());
    for (int j = -jb; j < g.ny + jb; ++j)
        for (int i = -band; i < g.nx + band; ++i) {
            const int k = g.idx(i, j);
            mu_new[k] = c.h2[k] * res.rhoE[k] + c.muhat[k] + c.mubar[k];
        }

    // w^{n+1} = damp (w^(1) - dt grad mu^{n+1})
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int k = g.idx(i, j);
            const double dmux = (mu_new[g.idx(i + 1, j)] - mu_new[g.idx(i - 1, j)]) / (2 * g.dx);
            const double dmuy =
                g.dims == 2
                    ? (mu_new[g.idx(i, j + 1)] - mu_new[g.idx(i, j - 1)]) / (2 * g.dy)
                    : 0.0;
            res.wx[k] = c.damp[k] * (f_star.wx[k] - dt * dmux);
            res.wy[k] = c.damp[k] * (f_star.wy[k] - dt * dmuy);
        }
    apply_bc(res, sampler);

    // p^{n+1} = (phi_p^n - 1)(rhoE^{n+1} - rhoE_kin) and the w stress at n+1
    Eigen::ArrayXd p_new = Eigen::ArrayXd::Zero(g.total());
    Eigen::ArrayXd sxx(g.total()), sxy(g.total()), syy(g.total());
    for (int j = -jb; j < g.ny + jb; ++j)
        for (int i = -band; i < g.nx + band; ++i) {
            const int k = g.idx(i, j);
            p_new[k] = c.h1[k] * (res.rhoE[k] - c.ekin_p[k]);
            sxx[k] = c.rym_star[k] * res.wx[k] * res.wx[k];
            sxy[k] = c.rym_star[k] * res.wx[k] * res.wy[k];
            syy[k] = c.rym_star[k] * res.wy[k] * res.wy[k];
        }

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int k = g.idx(i, j);
            const int ke = g.idx(i + 1, j), kw = g.idx(i - 1, j);
            double gpx = (p_new[ke] - p_new[kw]) / (2 * g.dx);
            double divx = (sxx[ke] - sxx[kw]) / (2 * g.dx);
            double divy = (sxy[ke] - sxy[kw]) / (2 * g.dx);
            double gpy = 0.0;
            if (g.dims == 2) {
                const int kn = g.idx(i, j + 1), ks = g.idx(i, j - 1);
                gpy = (p_new[kn] - p_new[ks]) / (2 * g.dy);
                divx += (sxy[kn] - sxy[ks]) / (2 * g.dy);
                divy += (syy[kn] - syy[ks]) / (2 * g.dy);
            }
            res.momx[k] = f_star.momx[k] - dt * (gpx + divx);
            res.momy[k] = f_star.momy[k] - dt * (gpy + divy);
        }
    apply_bc(res, sampler);

    // pressure relaxation of the volume fraction
    if (!std::isinf(eos_.tau_alpha)) {
        int max_newton = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                int it = 0;
                const double a = relax_alpha_cell(res.get(i, j), dt, eos_, &it);
                res.alpha1[g.idx(i, j)] = a;
                max_newton = std::max(max_newton, it);
            }
        if (stats) stats->newton_max_iterations = max_newton;
        apply_bc(res, sampler);
    }

    check_field_admissible(res, eos_, "implicit_stage");
    return res;
}

}  // namespace twofluid
