#include "twofluid/reference_solver.hpp"

#include "twofluid/implicit_stage.hpp"

namespace twofluid {

Vec8 flux_full(const State& q, const MixtureEOS& eos, int axis) {
    const Primitives p = to_primitives(q, eos);
    const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
    const double mu = mu_diff(th, eos);
    const double phi = q.w.dot(p.v) + (1.0 - 2.0 * p.y1) * 0.5 * q.w.squaredNorm();

    Vec8 F = Vec8::Zero();
    F[CM1] = q.m1 * p.v1[axis];
    F[CM2] = q.m2 * p.v2[axis];
    F[CMomX] = p.rho * p.v[axis] * p.v.x() + p.rho * p.y1 * p.y2 * q.w[axis] * q.w.x();
    F[CMomY] = p.rho * p.v[axis] * p.v.y() + p.rho * p.y1 * p.y2 * q.w[axis] * q.w.y();
    if (axis == 0) F[CMomX] += th.p_mix;
    else F[CMomY] += th.p_mix;
    F[CWX] = axis == 0 ? phi + mu : 0.0;
    F[CWY] = axis == 1 ? phi + mu : 0.0;
    F[CE] = p.v[axis] * (q.rhoE + th.p_mix) +
            p.rho * (phi + mu) * p.y1 * p.y2 * q.w[axis];
    return F;
}

Vec8 flux_im(const State& q, const MixtureEOS& eos, int axis) {
    const Primitives p = to_primitives(q, eos);
    const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
    const double mu = mu_diff(th, eos);

    Vec8 F = Vec8::Zero();
    F[CMomX] = p.rho * p.y1 * p.y2 * q.w[axis] * q.w.x();
    F[CMomY] = p.rho * p.y1 * p.y2 * q.w[axis] * q.w.y();
    if (axis == 0) F[CMomX] += th.p_mix;
    else F[CMomY] += th.p_mix;
    F[CWX] = axis == 0 ? mu : 0.0;
    F[CWY] = axis == 1 ? mu : 0.0;
    F[CE] = p.v[axis] * (q.rhoE + th.p_mix) + p.rho * mu * p.y1 * p.y2 * q.w[axis];
    return F;
}

double full_wave_speed(const State& q, const MixtureEOS& eos, const Vec2& n) {
    const Primitives p = to_primitives(q, eos);
    const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
    const double s1 = std::abs(p.v1.dot(n)) + std::sqrt(th.a1_sq);
    const double s2 = std::abs(p.v2.dot(n)) + std::sqrt(th.a2_sq);
    return std::max(s1, s2) + std::abs(q.w.dot(n));
}

double acoustic_dt(const Field& f, const MixtureEOS& eos, double nu) {
    double s = 0;
    f.for_interior([&](int i, int j) {
        const State q = f.get(i, j);
        for (int axis = 0; axis < f.grid.dims; ++axis) {
            Vec2 n = Vec2::Zero();
            n[axis] = 1.0;
            s = std::max(s, full_wave_speed(q, eos, n));
        }
    });
    return nu * f.grid.min_dx() / s;
}

namespace {

// relaxation sources applied cellwise after a stage (first-order split):
// exact damping of w, backward-Euler pressure relaxation of alpha
void apply_relaxation(Field& f, const MixtureEOS& eos, double dt) {
    const bool friction = !std::isinf(eos.tau_w);
    const bool pressure = !std::isinf(eos.tau_alpha);
    if (!friction && !pressure) return;
    f.for_interior([&](int i, int j) {
        State q = f.get(i, j);
        if (friction) {
            const double rho = q.m1 + q.m2;
            const double y1y2 = q.m1 * q.m2 / (rho * rho);
            // backward-Euler damping; rhoE is untouched, so the dissipated
            // relative kinetic energy reappears as heat
            q.w *= eos.tau_w / (eos.tau_w + dt * y1y2);
        }
        if (pressure) q.alpha1 = relax_alpha_cell(q, dt, eos);
        f.set(i, j, q);
    });
}

}  // namespace

Field ssprk2_step(const Field& f, const MixtureEOS& eos, double dt, int order,
                  const BoundarySampler& sampler) {
    FullFluxModel model(eos);
    // stage 1: forward Euler
    Field q1 = f;
    {
        Field rhs(f.grid);
        fv_rhs(f, eos, model, order, rhs);
        auto dst = q1.components();
        auto src = rhs.components();
        for (int c = 0; c < 8; ++c) *dst[c] += dt * (*src[c]);
    }
    apply_relaxation(q1, eos, dt);
    apply_bc(q1, sampler);
    check_field_admissible(q1, eos, "ssprk2 stage 1");

    // stage 2: Heun average
    Field q2 = q1;
    {
        Field rhs(f.grid);
        fv_rhs(q1, eos, model, order, rhs);
        auto dst = q2.components();
        auto src = rhs.components();
        for (int c = 0; c < 8; ++c) *dst[c] += dt * (*src[c]);
    }
    apply_relaxation(q2, eos, dt);
    Field out = f;
    {
        auto dst = out.components();
        auto a = q2.components();
        auto b = f.components();
        for (int c = 0; c < 8; ++c) *dst[c] = 0.5 * (*b[c] + *a[c]);
    }
    apply_bc(out, sampler);
    check_field_admissible(out, eos, "ssprk2 step");
    return out;
}

Field reference_run(Field f0, const MixtureEOS& eos, const ReferenceRunParams& params,
                    const BoundarySampler& sampler) {
    apply_bc(f0, sampler);
    double t = 0;
    long step = 0;
    Field f = std::move(f0);
    while (t < params.t_final && step < params.max_steps) {
        double dt = acoustic_dt(f, eos, params.cfl_nu);
        if (t + dt > params.t_final) dt = params.t_final - t;
        if (!(dt > 0)) break;
        f = ssprk2_step(f, eos, dt, params.order, sampler);
        t += dt;
        ++step;
    }
    return f;
}

}  // namespace twofluid
