#include <doctest.h>

#include "test_util.hpp"
#include "twofluid/grid.hpp"

using namespace twofluid;
using twofluid::testing::StateGen;

TEST_CASE("mixture quantities from partial densities") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0));
    Primitives p;
    p.rho1 = 2.0;
    p.rho2 = 1.0;
    p.v1 = p.v2 = Vec2::Zero();
    p.T = 1.0;
    const State q = from_primitives(p, 0.5, eos);
    const Primitives out = to_primitives(q, eos);
    CHECK(out.rho == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(out.y1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(out.y1 + out.y2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("temperature at zero kinetic content") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.5));
    const double T0 = 2.7;
    State q = make_state(0.4, 1.2, 0.8, Vec2::Zero(), Vec2::Zero(), T0, eos);
    CHECK(q.rhoE == doctest::Approx((q.m1 * 1.0 + q.m2 * 1.5) * T0).epsilon(1e-15));
    CHECK(to_primitives(q, eos).T == doctest::Approx(T0).epsilon(1e-14));
}

TEST_CASE("state <-> primitives round trip") {
    MixtureEOS eos = testing::generic_eos();
    StateGen gen(21);
    for (int k = 0; k < 1000; ++k) {
        const State q = gen.admissible(eos);
        const Primitives p = to_primitives(q, eos);
        const State back = from_primitives(p, q.alpha1, eos);
        CHECK(back.m1 == doctest::Approx(q.m1).epsilon(1e-12));
        CHECK(back.m2 == doctest::Approx(q.m2).epsilon(1e-12));
        CHECK(back.mom.x() == doctest::Approx(q.mom.x()).epsilon(1e-12));
        CHECK(back.rhoE == doctest::Approx(q.rhoE).epsilon(1e-12));
        // velocity decomposition identities
        CHECK((p.y1 * p.v1 + p.y2 * p.v2 - p.v).norm() < 1e-13);
        CHECK((p.v1 - p.v2 - q.w).norm() < 1e-13);
    }
}

TEST_CASE("mach numbers") {
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0));
    Primitives p;
    p.rho1 = 1;
    p.rho2 = 1;
    p.v = p.v1 = p.v2 = Vec2::Zero();
    p.y1 = p.y2 = 0.5;
    p.T = 2.0;
    const MachNumbers m0 = mach_numbers(p, eos);
    CHECK(m0.M1 == 0.0);
    CHECK(m0.M2 == 0.0);
    CHECK(m0.M_mix == 0.0);
    p.T = -1;
    CHECK_THROWS_AS(mach_numbers(p, eos), std::domain_error);
}

TEST_CASE("admissibility violations carry detail") {
    MixtureEOS eos = testing::generic_eos();
    State q = make_state(0.5, 1.0, 1.0, Vec2::Zero(), Vec2::Zero(), 1.0, eos);
    q.alpha1 = 1e-9;
    CHECK_THROWS_AS(check_admissible(q, eos), AdmissibilityError);
    q.alpha1 = 0.5;
    q.rhoE = 0.0;
    CHECK_THROWS_WITH_AS(check_admissible(q, eos), doctest::Contains("internal energy"),
                         AdmissibilityError);
}

namespace {

Field ramp_field(const Grid& g, const MixtureEOS& eos) {
    Field f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Primitives p;
            p.rho1 = 1.0 + 0.1 * i;
            p.rho2 = 2.0 + 0.1 * j;
            p.v1 = p.v2 = Vec2(0.1 * i, -0.2 * j);
            p.T = 1.0 + 0.01 * (i + j);
            f.set(i, j, from_primitives(p, 0.3 + 0.001 * i, eos));
        }
    return f;
}

}  // namespace

TEST_CASE("periodic ghost cells wrap around") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_1d(4, 0, 1, BC::Periodic, BC::Periodic);
    Field f = ramp_field(g, eos);
    apply_bc(f);
    // left ghosts mirror the rightmost interior cells (cells 3, 4 in 1-based terms)
    CHECK(f.get(-1, 0).m1 == f.get(3, 0).m1);
    CHECK(f.get(-2, 0).m1 == f.get(2, 0).m1);
    CHECK(f.get(4, 0).m1 == f.get(0, 0).m1);
    CHECK(f.get(5, 0).m1 == f.get(1, 0).m1);
}

TEST_CASE("transmissive ghosts copy the nearest interior cell") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_1d(6, 0, 1, BC::Transmissive, BC::Transmissive);
    Field f = ramp_field(g, eos);
    apply_bc(f);
    CHECK(f.get(-1, 0).rhoE == f.get(0, 0).rhoE);
    CHECK(f.get(-2, 0).rhoE == f.get(0, 0).rhoE);
    CHECK(f.get(7, 0).rhoE == f.get(5, 0).rhoE);
}

TEST_CASE("dirichlet ghosts sample the exact function") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_2d(4, 4, 0, 1, 0, 1,
                           {BC::DirichletExact, BC::DirichletExact, BC::DirichletExact,
                            BC::DirichletExact});
    Field f = ramp_field(g, eos);
    auto sampler = [&eos](double x, double y) {
        Primitives p;
        p.rho1 = 1.0 + x;
        p.rho2 = 2.0 + y;
        p.v1 = p.v2 = Vec2(x, y);
        p.T = 1.5;
        return from_primitives(p, 0.4, eos);
    };
    apply_bc(f, sampler);
    const State ghost = f.get(-1, 2);
    const State expect = sampler(g.xc(-1), g.yc(2));
    CHECK(ghost.m1 == expect.m1);
    CHECK(ghost.rhoE == expect.rhoE);
    // corner ghosts get filled through the y pass
    CHECK(f.get(-1, -1).m1 == sampler(g.xc(-1), g.yc(-1)).m1);
    CHECK_THROWS_AS(apply_bc(f, nullptr), std::invalid_argument);
}

TEST_CASE("ghost filling never modifies interior cells") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_2d(8, 8, 0, 1, 0, 1,
                           {BC::Periodic, BC::Periodic, BC::Transmissive, BC::Transmissive});
    Field f = ramp_field(g, eos);
    std::vector<double> before;
    f.for_interior([&](int i, int j) { before.push_back(f.get(i, j).rhoE); });
    apply_bc(f);
    size_t c = 0;
    f.for_interior([&](int i, int j) { CHECK(f.get(i, j).rhoE == before[c++]); });
}

TEST_CASE("conservation totals use the cell volume") {
    MixtureEOS eos = testing::generic_eos();
    Grid g = Grid::make_2d(8, 8, 0, 2, 0, 2, {BC::Periodic, BC::Periodic, BC::Periodic,
                                              BC::Periodic});
    Field f(g);
    const State q = make_state(0.5, 1.0, 1.0, Vec2(1, 0), Vec2::Zero(), 1.0, eos);
    f.for_interior([&](int i, int j) { f.set(i, j, q); });
    const ConservationTotals t = conservation_totals(f);
    CHECK(t.m1 == doctest::Approx(q.m1 * 4.0).epsilon(1e-14));
    CHECK(t.rhoE == doctest::Approx(q.rhoE * 4.0).epsilon(1e-14));
}
