#pragma once

#include "twofluid/explicit_stage.hpp"

namespace twofluid {

// Fully explicit solver for the unsplit system, used as the reference for
// the Riemann problems and for cross-validation of the splitting.

// Complete convective flux: pressure in the momentum, chemical-potential
// difference in the w potential, full energy flux.
Vec8 flux_full(const State& q, const MixtureEOS& eos, int axis);

// Flux of the implicitly treated subsystem (independent closed form; the
// splitting identity flux_ex + flux_im = flux_full is asserted in tests).
Vec8 flux_im(const State& q, const MixtureEOS& eos, int axis);

// Conservative bound on all convective and acoustic speeds:
// max_l(|v_l . n| + a_l) + |w . n|.
double full_wave_speed(const State& q, const MixtureEOS& eos, const Vec2& n);

struct FullFluxModel final : FluxModel {
    const MixtureEOS& eos;
    explicit FullFluxModel(const MixtureEOS& e) : eos(e) {}
    Vec8 flux(const State& q, int axis) const override { return flux_full(q, eos, axis); }
    double max_speed(const State& q, int axis) const override {
        Vec2 n = Vec2::Zero();
        n[axis] = 1.0;
        return full_wave_speed(q, eos, n);
    }
};

double acoustic_dt(const Field& f, const MixtureEOS& eos, double nu);

// Heun SSP-RK2 step with Rusanov fluxes over the full system; relaxation
// sources (when active) are applied as a first-order split after each stage.
Field ssprk2_step(const Field& f, const MixtureEOS& eos, double dt, int order,
                  const BoundarySampler& sampler = nullptr);

struct ReferenceRunParams {
    double t_final = 0;
    double cfl_nu = 0.2;
    int order = 2;
    long max_steps = 100000000;
};

Field reference_run(Field f0, const MixtureEOS& eos, const ReferenceRunParams& params,
                    const BoundarySampler& sampler = nullptr);

}  // namespace twofluid
