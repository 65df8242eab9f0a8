#include <doctest.h>

#include "test_util.hpp"
#include "twofluid/cases.hpp"
#include "twofluid/diagnostics.hpp"

using namespace twofluid;
using twofluid::testing::StateGen;

TEST_CASE("l1 error basics") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_2d(8, 8, 0, 1, 0, 1,
                           {BC::Periodic, BC::Periodic, BC::Periodic, BC::Periodic});
    StateGen gen(3);
    Field f(g);
    f.for_interior([&](int i, int j) { f.set(i, j, gen.admissible(eos)); });

    SUBCASE("identical fields have zero error") {
        const VariableErrors e = l1_error(f, f, eos);
        CHECK(e.max() == 0.0);
    }

    SUBCASE("a constant temperature offset integrates to the offset") {
        Field f2 = f;
        // unit-area domain: shifting T by c everywhere gives err_T = c
        f2.for_interior([&](int i, int j) {
            const State q = f.get(i, j);
            const Primitives p = to_primitives(q, eos);
            Primitives p2 = p;
            p2.T = p.T + 0.25;
            f2.set(i, j, from_primitives(p2, q.alpha1, eos));
        });
        const VariableErrors e = l1_error(f, f2, eos);
        CHECK(e.T == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(e.alpha1 == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("metric properties: symmetry and identity") {
        StateGen gen2(5);
        Field f2(g);
        f2.for_interior([&](int i, int j) { f2.set(i, j, gen2.admissible(eos)); });
        const VariableErrors ab = l1_error(f, f2, eos);
        const VariableErrors ba = l1_error(f2, f, eos);
        CHECK(ab.rho1 == doctest::Approx(ba.rho1).epsilon(1e-14));
        CHECK(ab.T == doctest::Approx(ba.T).epsilon(1e-14));
        CHECK(ab.rho1 > 0);
    }

    SUBCASE("grid mismatch is an error") {
        Grid g2 = Grid::make_2d(16, 16, 0, 1, 0, 1, g.bc);
        Field other(g2);
        CHECK_THROWS_AS(l1_error(f, other, eos), std::invalid_argument);
    }
}

TEST_CASE("experimental order of convergence") {
    CHECK(eoc({1e-2, 2.5e-3})[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eoc({1e-2, 5e-3})[0] == doctest::Approx(1.0).epsilon(1e-12));

    // the published alpha1 error sequence reproduces the published EOC column
    const std::vector<double> seq{6.31e-3, 1.15e-3, 2.20e-4, 4.69e-5};
    const std::vector<double> orders = eoc(seq);
    CHECK(orders[0] == doctest::Approx(2.45).epsilon(0.005));
    CHECK(orders[1] == doctest::Approx(2.38).epsilon(0.005));
    CHECK(orders[2] == doctest::Approx(2.23).epsilon(0.005));

    CHECK(std::isnan(eoc({1.0, 0.0})[0]));
    CHECK_THROWS_AS(eoc({1.0}), std::invalid_argument);
}

TEST_CASE("discrete divergence") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_2d(32, 32, 0, 1, 0, 1,
                           {BC::Periodic, BC::Periodic, BC::Periodic, BC::Periodic});

    SUBCASE("stream-function velocity is divergence free to round-off") {
        Field f(g);
        constexpr double pi = 3.14159265358979323846;
        f.for_interior([&](int i, int j) {
            const Vec2 v(std::sin(2 * pi * g.xc(i)) * std::cos(2 * pi * g.yc(j)),
                         -std::cos(2 * pi * g.xc(i)) * std::sin(2 * pi * g.yc(j)));
            f.set(i, j, make_state(0.5, 1.0, 1.0, v, Vec2::Zero(), 2.0, eos));
        });
        apply_bc(f);
        CHECK(discrete_divergence(f).max_abs < 1e-12);
    }

    SUBCASE("uniform diagonal flow is divergence free") {
        Field f(g);
        f.for_interior([&](int i, int j) {
            f.set(i, j, make_state(0.4, 1.0, 1.5, Vec2(1, 1), Vec2::Zero(), 3.0, eos));
        });
        apply_bc(f);
        CHECK(discrete_divergence(f).max_abs < 1e-13);
    }
}

TEST_CASE("entropy production") {
    SUBCASE("zero at equilibrium") {
        MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0), 1.0, 1e-3, 1e-3);
        // pressure equilibrium: (g1-1)cv1 rho1 = (g2-1)cv2 rho2, w = 0
        Primitives p;
        p.rho1 = 1.0;
        p.rho2 = 0.4;
        p.v1 = p.v2 = Vec2(0.3, 0.0);
        p.T = 2.0;
        const State q = from_primitives(p, 0.37, eos);
        CHECK(entropy_production(q, eos) == doctest::Approx(0.0).epsilon(1e-13));
    }

    SUBCASE("nonnegative over randomized states") {
        MixtureEOS eos(PhaseParams(1.4, 0.8), PhaseParams(1.9, 1.3), 1.0, 1e-2, 1e-2);
        StateGen gen(83);
        for (int k = 0; k < 20000; ++k) {
            CHECK(entropy_production(gen.admissible(eos), eos) >= 0.0);
        }
    }

    SUBCASE("infinite relaxation times produce nothing") {
        MixtureEOS eos = testing::generic_eos();
        StateGen gen(11);
        CHECK(entropy_production(gen.admissible(eos), eos) == 0.0);
    }
}

TEST_CASE("field report serialization") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_1d(8, 0, 1, BC::Periodic, BC::Periodic);
    StateGen gen(3);
    Field f(g);
    for (int i = 0; i < 8; ++i) f.set(i, 0, gen.admissible(eos));
    apply_bc(f);
    const FieldReport rep = field_report(f, eos, 0.5, 1e-3, 17);
    const std::string row = rep.csv_row();
    // as many fields as the documented header
    const auto count = [](const std::string& s) {
        return std::count(s.begin(), s.end(), ',');
    };
    CHECK(count(row) == count(FieldReport::csv_header()));
    CHECK(rep.entropy.min_Pi >= 0.0);
}
