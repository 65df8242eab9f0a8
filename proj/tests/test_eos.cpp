#include <doctest.h>

#include "test_util.hpp"
#include "twofluid/implicit_stage.hpp"

using namespace twofluid;
using twofluid::testing::StateGen;

TEST_CASE("ideal gas closed forms") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(5.0 / 3.0, 1.0));
    const ThermoEval th = eval_thermo(0.5, 1.0, 1.0, 2.0, eos);
    CHECK(th.p1 == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(th.e1 == doctest::Approx(2.0).epsilon(1e-14));
    // T0 = 1/((gamma-1) cv) recomputed, not stored
    CHECK(eos.phase1.t0() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("phase symmetry for identical materials") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(1.4, 1.0));
    const ThermoEval th = eval_thermo(0.3, 1.7, 1.7, 2.4, eos);
    CHECK(th.p1 == th.p2);
    CHECK(th.mu1 == th.mu2);
    CHECK(th.s1 == th.s2);
}

TEST_CASE("thermo against high-precision reference values") {
    // rho1=2, rho2=1, T=1.5, gamma=(1.4,2), cv=(1,1); values frozen from a
    // 40-digit evaluation of the closed forms
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0));
    const ThermoEval th = eval_thermo(0.4, 2.0, 1.0, 1.5, eos);
    CHECK(th.p1 == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(th.p2 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(th.s1 == doctest::Approx(-0.78808449598996880697).epsilon(1e-15));
    CHECK(th.mu1 == doctest::Approx(3.2821267439849532105).epsilon(1e-15));
    CHECK(th.s2 == doctest::Approx(0.40546510810816438198).epsilon(1e-15));
    CHECK(th.mu2 == doctest::Approx(2.391802337837753427).epsilon(1e-15));
    CHECK(th.p_mix == doctest::Approx(0.4 * 1.2 + 0.6 * 1.5).epsilon(1e-14));
}

TEST_CASE("thermo domain errors name the offending field") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0));
    CHECK_THROWS_WITH_AS(eval_thermo(0.4, -1.0, 1.0, 1.5, eos), doctest::Contains("rho1"),
                         std::domain_error);
    CHECK_THROWS_WITH_AS(eval_thermo(0.4, 1.0, 0.0, 1.5, eos), doctest::Contains("rho2"),
                         std::domain_error);
    CHECK_THROWS_WITH_AS(eval_thermo(0.4, 1.0, 1.0, -2.0, eos), doctest::Contains("temperature"),
                         std::domain_error);
}

TEST_CASE("phi_p limits and averages") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0));
    // single-phase limit
    CHECK(phi_p(1.0 - 1e-13, 1e-13, 1.0, 1.0, eos) == doctest::Approx(1.4).epsilon(1e-10));
    // equal cv-weighted masses: arithmetic mean of the gammas
    CHECK(phi_p(0.5, 0.5, 1.0, 1.0, eos) == doctest::Approx(1.7).epsilon(1e-14));
    // identical gammas
    MixtureEOS eq(PhaseParams(1.4, 1.0), PhaseParams(1.4, 2.5));
    CHECK(phi_p(0.3, 0.7, 2.0, 0.5, eq) == doctest::Approx(1.4).epsilon(1e-14));
}

TEST_CASE("phi_p is a weighted mean of the gammas (property)") {
    MixtureEOS eos = testing::generic_eos();
    StateGen gen(7);
    for (int k = 0; k < 2000; ++k) {
        const State q = gen.admissible(eos);
        const Primitives p = to_primitives(q, eos);
        const double v = phi_p(q.alpha1, 1 - q.alpha1, p.rho1, p.rho2, eos);
        CHECK(v >= std::min(eos.phase1.gamma, eos.phase2.gamma) - 1e-14);
        CHECK(v <= std::max(eos.phase1.gamma, eos.phase2.gamma) + 1e-14);
    }
}

TEST_CASE("pressure from energy identity") {
    MixtureEOS eos = testing::generic_eos();
    StateGen gen(11);
    for (int k = 0; k < 2000; ++k) {
        const State q = gen.admissible(eos);
        const Primitives p = to_primitives(q, eos);
        const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
        const double lhs = th.p_mix;
        const double rhs = (phi_p(q.alpha1, 1 - q.alpha1, p.rho1, p.rho2, eos) - 1.0) *
                           (q.rhoE - rho_ekin(q));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("phi_mu zero cases") {
    // identical phases, C = 1
    MixtureEOS same(PhaseParams(1.4, 1.0), PhaseParams(1.4, 1.0));
    const ThermoEval th = eval_thermo(0.4, 1.3, 1.3, 2.0, same);
    CHECK(phi_mu(th, 0.4, 0.6, 1.3, 1.3, same) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mu_diff(th, same) == doctest::Approx(0.0).epsilon(1e-14));

    // s1 = gamma1 cv1 and s2 = gamma2 cv2 kill the numerator
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0));
    const double rho1 = 1.0;
    const double T = eos.phase1.t0() * std::exp(eos.phase1.gamma);
    // pick rho2 so that s2 = gamma2 cv2 at the same temperature
    const double lg =
        (std::log(T / eos.phase2.t0()) - eos.phase2.gamma) / (eos.phase2.gamma - 1.0);
    const double rho2 = std::exp(lg);
    const ThermoEval th2 = eval_thermo(0.4, rho1, rho2, T, eos);
    CHECK(th2.s1 == doctest::Approx(eos.phase1.gamma * eos.phase1.cv).epsilon(1e-13));
    CHECK(th2.s2 == doctest::Approx(eos.phase2.gamma * eos.phase2.cv).epsilon(1e-13));
    CHECK(std::abs(phi_mu(th2, 0.4, 0.6, rho1, rho2, eos)) < 1e-13);
}

TEST_CASE("mu as a function of rhoE: exact identity and finite differences") {
    // frozen 40-digit values for alpha=0.35, rho=(1.7,0.9), T=2.2
    MixtureEOS eos = testing::generic_eos();
    const double alpha = 0.35, rho1 = 1.7, rho2 = 0.9, T = 2.2;
    const ThermoEval th = eval_thermo(alpha, rho1, rho2, T, eos);
    CHECK(mu_diff(th, eos) == doctest::Approx(0.9964984124588733169).epsilon(1e-14));
    const double rhoe = (alpha * rho1 * eos.phase1.cv + (1 - alpha) * rho2 * eos.phase2.cv) * T;
    CHECK(phi_mu(th, alpha, 1 - alpha, rho1, rho2, eos) * rhoe ==
          doctest::Approx(0.9964984124588733169).epsilon(1e-13));
    CHECK(dmu_dE(th, alpha, 1 - alpha, rho1, rho2, eos) ==
          doctest::Approx(0.77068647298418311102).epsilon(1e-14));

    // centered finite difference of mu w.r.t. rhoE at fixed masses/velocities
    Primitives base;
    base.rho1 = rho1;
    base.rho2 = rho2;
    base.v1 = Vec2(0.3, -0.1);
    base.v2 = Vec2(-0.2, 0.4);
    base.T = T;
    State q = from_primitives(base, alpha, eos);
    auto mu_of = [&](double rhoE) {
        State qq = q;
        qq.rhoE = rhoE;
        const Primitives pp = to_primitives(qq, eos);
        return mu_diff(eval_thermo(qq.alpha1, pp.rho1, pp.rho2, pp.T, eos), eos);
    };
    const double h = 1e-6 * q.rhoE;
    const double fd = (mu_of(q.rhoE + h) - mu_of(q.rhoE - h)) / (2 * h);
    const Primitives p = to_primitives(q, eos);
    const ThermoEval thq = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
    CHECK(dmu_dE(thq, q.alpha1, 1 - q.alpha1, p.rho1, p.rho2, eos) ==
          doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("dmu_dE stays bounded under low-Mach cv scaling") {
    double base = 0;
    for (double M : {1.0, 1e-2, 1e-4}) {
        const double cv1 = 0.8 / (M * M);
        const double cv2 = cv2_for_mach_ratio(1.4, cv1, 1.9, 1.0);
        MixtureEOS eos(PhaseParams(1.4, cv1), PhaseParams(1.9, cv2));
        const ThermoEval th = eval_thermo(0.35, 1.7, 0.9, 2.2, eos);
        const double v = std::abs(dmu_dE(th, 0.35, 0.65, 1.7, 0.9, eos));
        if (M == 1.0) base = v;
        CHECK(v <= 100.0 * (base + 1.0));
    }
}

TEST_CASE("mu split: expansion point, identical phases, exactness") {
    MixtureEOS eos = testing::generic_eos();
    ReferenceState rs = ReferenceState::from_constants(1.1, 0.8, 2.0, eos);

    // q = q_RS: remainder vanishes
    Primitives p;
    p.rho1 = rs.rho1_rs;
    p.rho2 = rs.rho2_rs;
    p.v1 = Vec2(0.2, 0.1);
    p.v2 = Vec2(0.2, 0.1);
    p.T = rs.T_rs;
    const State q_rs = from_primitives(p, 0.4, eos);
    const MuSplit at_rs = linearize_mu(q_rs, rs, eos);
    CHECK(std::abs(at_rs.mu_bar) < 1e-12);

    // identical phases with C = 1: everything vanishes
    MixtureEOS same(PhaseParams(1.5, 1.0), PhaseParams(1.5, 1.0));
    ReferenceState rs_same = ReferenceState::from_constants(1.0, 1.0, 2.0, same);
    p.rho1 = p.rho2 = 1.0;
    p.T = 2.0;
    const MuSplit z = linearize_mu(from_primitives(p, 0.5, same), rs_same, same);
    CHECK(std::abs(z.mu_hat_rs) < 1e-13);
    CHECK(std::abs(z.dmu_rs) < 1e-13);
    CHECK(std::abs(z.mu_bar) < 1e-13);

    // exactness of mu = mu_hat + mu_bar for random states and references
    StateGen gen(3);
    for (int k = 0; k < 500; ++k) {
        const State q = gen.admissible(eos);
        ReferenceState rr = ReferenceState::from_constants(
            gen.uniform(0.5, 2.0), gen.uniform(0.5, 2.0), gen.uniform(0.5, 3.0), eos);
        const MuSplit ms = linearize_mu(q, rr, eos);
        const ThermoEval th = eval_thermo(q, eos);
        const double mu = mu_diff(th, eos);
        const double recon = ms.mu_hat_rs + ms.dmu_rs * q.rhoE + ms.mu_bar;
        const double scale = std::abs(ms.mu_hat_rs) + std::abs(ms.dmu_rs * q.rhoE) + 1.0;
        CHECK(std::abs(mu - recon) <= 1e-13 * scale);
    }
}

TEST_CASE("mu_bar scales like M^2 for well-prepared states") {
    // perturb rhoE by an O(M^2) relative amount around the reference; the
    // remainder of the linearization must drop ~100x per Mach decade
    std::vector<double> bars;
    for (double M : {1e-1, 1e-2}) {
        const double cv1 = 1.0 / (M * M);
        const double cv2 = cv2_for_mach_ratio(1.4, cv1, 1.9, 1.0);
        MixtureEOS eos(PhaseParams(1.4, cv1), PhaseParams(1.9, cv2));
        ReferenceState rs = ReferenceState::from_constants(1.0, 0.9, 2.0, eos);
        Primitives p;
        p.rho1 = 1.0;
        p.rho2 = 0.9;
        p.v1 = p.v2 = Vec2(0.5, 0.0);
        p.T = 2.0;
        State q = from_primitives(p, 0.4, eos);
        q.rhoE *= 1.0 + 0.01 * M * M;
        const MuSplit ms = linearize_mu(q, rs, eos);
        bars.push_back(std::abs(ms.mu_bar));
    }
    const double ratio = bars[0] / bars[1];
    CHECK(ratio > 100.0 / 3.0);
    CHECK(ratio < 100.0 * 3.0);
}

TEST_CASE("temperature reconstruction round trip") {
    MixtureEOS eos = testing::generic_eos();
    StateGen gen(5);
    for (int k = 0; k < 500; ++k) {
        const double rho1 = gen.uniform(0.2, 3.0), rho2 = gen.uniform(0.2, 3.0);
        const double T = gen.uniform(0.3, 4.0);
        const ThermoEval th = eval_thermo(0.5, rho1, rho2, T, eos);
        const double T1 = th.p1 / ((eos.phase1.gamma - 1) * eos.phase1.cv * rho1);
        const double T2 = th.p2 / ((eos.phase2.gamma - 1) * eos.phase2.cv * rho2);
        CHECK(T1 == doctest::Approx(T).epsilon(1e-12));
        CHECK(T2 == doctest::Approx(T).epsilon(1e-12));
    }
}
