#pragma once

#include <map>
#include <memory>
#include <string>

#include "twofluid/grid.hpp"
#include "twofluid/vortex.hpp"

namespace twofluid {

// A fully assembled initial-value problem: grid, closure constants including
// the relaxation times, initial field, boundary sampler (when Dirichlet) and
// the CFL numbers the reference runs use.
struct CaseSpec {
    std::string name;
    Grid grid;
    MixtureEOS eos;
    Field initial;
    BoundarySampler sampler;  // null unless DirichletExact sides are present
    double t_final = 0;
    double nu_order1 = 0.5;
    double nu_order2 = 0.25;

    CaseSpec(std::string n, Grid g, MixtureEOS e)
        : name(std::move(n)), grid(g), eos(e), initial(g) {}
};

enum class RiemannId { RP1, RP2 };

// Homogeneous 1D Riemann problems on [0,1] with the jump at x = 0.5,
// transmissive boundaries, gamma = (1.4, 2), cv = (1, 1), T_f = 0.2.
CaseSpec riemann_case(RiemannId id, int n_cells);

// Diagonally advected bubble on periodic [0,1]^2. C sets cv2 through the
// Mach-ratio relation; stiff pressure relaxation and strong friction.
CaseSpec bubble_case(double C, int n);

// Kelvin-Helmholtz shear on periodic [0,1]^2; eps scales cv so the maximal
// initial Mach number is 0.1 eps.
CaseSpec kelvin_helmholtz_case(double eps, int n);

enum class AlphaProfile { Constant, Smooth };

// Well-prepared data: constant phase densities and temperature in pressure
// equilibrium, divergence-free velocity from a stream function, w = 0,
// tau_w = M^2, cv ~ 1/M^2.
CaseSpec well_prepared_case(double M, AlphaProfile alpha_profile, int n);

enum class VortexRegime { Compressible, WeaklyCompressible };

// Stationary vortex on [-1,1]^2 with exact-solution Dirichlet ghosts.
CaseSpec vortex_case(VortexRegime regime, int n, double t_final = 0.1);

// material constants and the exact profile of a vortex regime
MixtureEOS vortex_eos(VortexRegime regime);
std::shared_ptr<VortexProfile> vortex_profile(VortexRegime regime,
                                              const MixtureEOS& eos);

// Factory addressable from the CLI; params may carry case-specific knobs
// (C, eps, M, t_final, alpha: constant|smooth).
CaseSpec make_case(const std::string& name, int n,
                   const std::map<std::string, std::string>& params = {});

std::vector<std::string> case_names();

}  // namespace twofluid
