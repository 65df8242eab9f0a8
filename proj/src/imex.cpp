#include "twofluid/imex.hpp"

#include <cmath>
#include <vector>

namespace twofluid {

ButcherPair ButcherPair::euler_pair() {
    ButcherPair t;
    t.stages = 2;
    t.A = Eigen::MatrixXd::Zero(2, 2);
    t.A(1, 1) = 1.0;
    t.At = Eigen::MatrixXd::Zero(2, 2);
    t.At(1, 0) = 1.0;
    t.b = Eigen::Vector2d(0.0, 1.0);
    t.bt = Eigen::Vector2d(1.0, 0.0);
    t.d = Eigen::Vector2d(0.0, 1.0);
    t.dtv = Eigen::Vector2d(0.0, 1.0);
    t.gsa = true;
    return t;
}

ButcherPair ButcherPair::ars222() {
    const double g = 1.0 - 1.0 / std::sqrt(2.0);
    const double d = 1.0 - 1.0 / (2.0 * g);
    ButcherPair t;
    t.stages = 3;
    t.A = Eigen::MatrixXd::Zero(3, 3);
    t.A(1, 1) = g;
    t.A(2, 1) = 1.0 - g;
    t.A(2, 2) = g;
    t.At = Eigen::MatrixXd::Zero(3, 3);
    t.At(1, 0) = g;
    t.At(2, 0) = d;
    t.At(2, 1) = 1.0 - d;
    t.b = Eigen::Vector3d(0.0, 1.0 - g, g);
    t.bt = Eigen::Vector3d(d, 1.0 - d, 0.0);
    t.d = Eigen::Vector3d(0.0, g, 1.0);
    t.dtv = Eigen::Vector3d(0.0, g, 1.0);
    t.gsa = true;
    return t;
}

void ButcherPair::validate(bool require_gsa) const {
    const int s = stages;
    if (A.rows() != s || At.rows() != s || b.size() != s || bt.size() != s)
        throw std::invalid_argument("ButcherPair: inconsistent sizes");
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            if (j > i && A(i, j) != 0.0)
                throw std::invalid_argument("ButcherPair: implicit tableau not lower triangular");
            if (j >= i && At(i, j) != 0.0)
                throw std::invalid_argument(
                    "ButcherPair: explicit tableau not strictly lower triangular");
        }
    // implicit increments reused by later stages need a diagonal solve
    for (int k = 0; k < s; ++k) {
        bool used = b[k] != 0.0;
        for (int i = k + 1; i < s; ++i) used = used || A(i, k) != 0.0;
        if (used && A(k, k) == 0.0)
            throw std::invalid_argument(
                "ButcherPair: stage " + std::to_string(k) +
                " has zero diagonal but its implicit increment is used");
    }
    if (require_gsa) {
        const double eps = 1e-14;
        bool rows_match = true;
        for (int j = 0; j < s; ++j) {
            rows_match = rows_match && std::abs(A(s - 1, j) - b[j]) <= eps &&
                         std::abs(At(s - 1, j) - bt[j]) <= eps;
        }
        if (!gsa || !rows_match)
            throw std::invalid_argument("ButcherPair: tableau is not globally stiffly accurate");
    }
}

double compute_dt(const Field& f, const MixtureEOS& eos, double nu, double dt_max) {
    const Grid& g = f.grid;
    double lam = 0.0, amax = 0.0;
    f.for_interior([&](int i, int j) {
        const State q = f.get(i, j);
        for (int axis = 0; axis < g.dims; ++axis) {
            Vec2 n = Vec2::Zero();
            n[axis] = 1.0;
            lam = std::max(lam, wave_speeds(q, n).max_abs());
        }
        const ThermoEval th = eval_thermo(q, eos);
        amax = std::max(amax, std::sqrt(th.a_mix_sq));
    });
    const double h = g.min_dx();
    if (lam > 1e-300) return std::min(nu * h / lam, dt_max);
    if (amax > 1e-300) return std::min(nu * h / amax, dt_max);
    return dt_max;
}

Field imex_step(const Field& f, double dt, const ButcherPair& tab, const ImplicitStage& imp,
                const MixtureEOS& eos, int order, const BoundarySampler& sampler,
                StepStats* stats, bool alpha_dissipation) {
    const int s = tab.stages;
    const Grid& g = f.grid;
    ExplicitFluxModel model(eos, alpha_dissipation);

    std::vector<Field> X;  // explicit rhs at each stage
    std::vector<Field> Y;  // implicit increments (q_k - q*)/(a_kk dt)
    X.reserve(s);
    Y.reserve(s);

    Field q_prev = f;  // most recent fully assembled stage state
    Field q_last = f;

    for (int k = 0; k < s; ++k) {
        // explicit rhs of the previous stage is needed before building q*
        if (k > 0 && static_cast<int>(X.size()) < k) {
            Field rhs(g);
            fv_rhs(q_last, eos, model, order, rhs);
            X.push_back(std::move(rhs));
        }

        Field qstar = f;
        for (int i = 0; i < k; ++i) {
            if (tab.At(k, i) != 0.0) {
                auto dst = qstar.components();
                auto src = X[i].components();
                for (int c = 0; c < 8; ++c) *dst[c] += (tab.At(k, i) * dt) * (*src[c]);
            }
            if (tab.A(k, i) != 0.0) {
                auto dst = qstar.components();
                auto src = Y[i].components();
                for (int c = 0; c < 8; ++c) *dst[c] += (tab.A(k, i) * dt) * (*src[c]);
            }
        }

        Field qk = f;
        try {
            if (tab.A(k, k) != 0.0) {
                apply_bc(qstar, sampler);
                check_field_admissible(qstar, eos, "imex stage (post-explicit)");
                ImplicitStats istats;
                const double dt_eff = tab.A(k, k) * dt;
                qk = imp.advance(qstar, q_prev, dt_eff, sampler, &istats);
                if (stats) {
                    stats->implicit = istats;
                    stats->implicit_solves += 1;
                }
                Field yk(g);
                auto dy = yk.components();
                auto a = qk.components();
                auto bcomp = qstar.components();
                for (int c = 0; c < 8; ++c) *dy[c] = (*a[c] - *bcomp[c]) / dt_eff;
                Y.push_back(std::move(yk));
            } else {
                qk = std::move(qstar);
                apply_bc(qk, sampler);
                if (k > 0) check_field_admissible(qk, eos, "imex stage (explicit)");
                Y.emplace_back(g);  // zero; validate() guarantees it is unused
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("imex_step: stage " + std::to_string(k + 1) + ": " +
                                     e.what());
        }
        q_prev = qk;
        q_last = std::move(qk);
    }

    if (tab.gsa) return q_last;

    // non-GSA final combination
    {
        Field rhs(g);
        fv_rhs(q_last, eos, model, order, rhs);
        X.push_back(std::move(rhs));
    }
    Field out = f;
    for (int k = 0; k < s; ++k) {
        auto dst = out.components();
        if (tab.bt[k] != 0.0) {
            auto src = X[k].components();
            for (int c = 0; c < 8; ++c) *dst[c] += (tab.bt[k] * dt) * (*src[c]);
        }
        if (tab.b[k] != 0.0) {
            auto src = Y[k].components();
            for (int c = 0; c < 8; ++c) *dst[c] += (tab.b[k] * dt) * (*src[c]);
        }
    }
    apply_bc(out, sampler);
    check_field_admissible(out, eos, "imex final combination");
    return out;
}

Field run(Field f0, const MixtureEOS& eos, const ReferenceState& rs, const ButcherPair& tab,
          const RunParams& params, const BoundarySampler& sampler, const OutputHook& on_output,
          const StepHook& on_step, const ImplicitConfig& icfg) {
    tab.validate(true);
    ImplicitStage imp(eos, rs, icfg);
    apply_bc(f0, sampler);
    check_field_admissible(f0, eos, "run: initial field");

    double t = 0;
    long step = 0;
    double last_output_t = -1;
    if (on_output) {
        on_output(f0, t, step);
        last_output_t = t;
    }
    double next_output =
        params.output_dt > 0 ? params.output_dt : std::numeric_limits<double>::infinity();

    Field f = std::move(f0);
    while (t < params.t_final && step < params.max_steps) {
        double dt = compute_dt(f, eos, params.cfl_nu, params.dt_max);
        bool hit_output = false;
        if (t + dt >= params.t_final) {
            dt = params.t_final - t;
        } else if (t + dt >= next_output) {
            dt = next_output - t;
            hit_output = true;
        }
        if (!(dt > 0)) break;

        StepStats stats;
        try {
            f = imex_step(f, dt, tab, imp, eos, params.order, sampler, &stats,
                          params.alpha_dissipation);
        } catch (const std::exception& e) {
            throw std::runtime_error("run: step " + std::to_string(step + 1) + " at t=" +
                                     std::to_string(t) + ": " + e.what());
        }
        t += dt;
        ++step;
        if (on_step) on_step(f, StepInfo{step, t, dt, stats});
        if (hit_output || (params.output_dt > 0 && t >= next_output - 1e-14)) {
            if (on_output) {
                on_output(f, t, step);
                last_output_t = t;
            }
            next_output += params.output_dt;
        }
    }
    if (on_output && t > last_output_t) on_output(f, t, step);
    return f;
}

}  // namespace twofluid
