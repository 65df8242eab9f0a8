#pragma once

#include <Eigen/Dense>
#include <functional>

#include "twofluid/implicit_stage.hpp"

namespace twofluid {

// IMEX Runge-Kutta tableau pair: implicit (A, b, d) lower triangular,
// explicit (At, bt, dt) strictly lower triangular.
struct ButcherPair {
    Eigen::MatrixXd A, At;
    Eigen::VectorXd b, bt;
    Eigen::VectorXd d, dtv;
    int stages = 0;
    bool gsa = false;

    // forward/backward Euler written as a two-stage pair so that the GSA row
    // conditions hold; reproduces the sequential explicit-then-implicit step
    static ButcherPair euler_pair();
    // second order ARS(2,2,2) with gamma = 1 - 1/sqrt(2), delta = 1 - 1/(2 gamma)
    static ButcherPair ars222();

    static ButcherPair for_order(int order) {
        return order >= 2 ? ars222() : euler_pair();
    }

    // Triangularity, GSA row conditions, and solvability: any stage whose
    // implicit increment is reused later must have a nonzero diagonal.
    void validate(bool require_gsa) const;
};

// Material CFL time step: nu * dx_min / max |lambda| over cells and axis
// projections. A quiescent field falls back to the acoustic bound, then to
// dt_max.
double compute_dt(const Field& f, const MixtureEOS& eos, double nu,
                  double dt_max = std::numeric_limits<double>::infinity());

struct StepStats {
    ImplicitStats implicit;
    int implicit_solves = 0;
};

// One IMEX step of size dt. The field must carry filled ghosts on entry;
// the result has ghosts filled.
Field imex_step(const Field& f, double dt, const ButcherPair& tab, const ImplicitStage& imp,
                const MixtureEOS& eos, int order, const BoundarySampler& sampler = nullptr,
                StepStats* stats = nullptr, bool alpha_dissipation = true);

struct RunParams {
    double t_final = 0;
    double cfl_nu = 0.5;
    int order = 1;
    double dt_max = std::numeric_limits<double>::infinity();
    long max_steps = 1000000;
    double output_dt = 0;  // 0: only initial and final
    bool alpha_dissipation = true;
};

struct StepInfo {
    long step;
    double t;
    double dt;
    StepStats stats;
};

using OutputHook = std::function<void(const Field&, double t, long step)>;
using StepHook = std::function<void(const Field&, const StepInfo&)>;

// Advances f0 to t_final, clipping dt to hit output times and t_final
// exactly. Throws annotated errors on stage failures.
Field run(Field f0, const MixtureEOS& eos, const ReferenceState& rs, const ButcherPair& tab,
          const RunParams& params, const BoundarySampler& sampler = nullptr,
          const OutputHook& on_output = nullptr, const StepHook& on_step = nullptr,
          const ImplicitConfig& icfg = {});

}  // namespace twofluid
