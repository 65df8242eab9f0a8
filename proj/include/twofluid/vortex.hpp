#pragma once

#include <vector>

#include "twofluid/grid.hpp"

namespace twofluid {

// Stationary two-fluid vortex: zero radial velocities, prescribed angular
// velocity and volume-fraction profiles, phase densities tied by
// rho2 = c_rho rho1, and (rho1, T) from the radial ODE system integrated
// with RK4.
struct VortexParams {
    double c_alpha = 0.4;
    double alpha_c = 1e-5;
    double nu_alpha = 10.0;
    double v_c1 = 2e-6;
    double v_c2 = 2.5e-6;
    double nu_v1 = 15.0;
    double nu_v2 = 14.0;
    double c_rho = 1.0;
    double rho1_0 = 1.0;
    double T_0 = 2.0;

    double alpha(double r) const { return c_alpha + alpha_c * std::exp(nu_alpha * (1 - r * r)); }
    double dalpha_dr(double r) const {
        return alpha_c * std::exp(nu_alpha * (1 - r * r)) * (-2.0 * nu_alpha * r);
    }
    double vtheta(int l, double r) const {
        const double vc = l == 0 ? v_c1 : v_c2;
        const double nu = l == 0 ? nu_v1 : nu_v2;
        return r * vc * std::exp(nu * (1 - r * r));
    }
    double dvtheta_dr(int l, double r) const {
        const double vc = l == 0 ? v_c1 : v_c2;
        const double nu = l == 0 ? nu_v1 : nu_v2;
        return vc * std::exp(nu * (1 - r * r)) * (1 - 2 * nu * r * r);
    }
};

// d(rho1)/dr and dT/dr from the 2x2 linear system of the radial balance
// (pressure vs. centrifugal force, and the relative-velocity potential).
std::pair<double, double> vortex_rhs(double r, double rho1, double T,
                                     const VortexParams& params, const MixtureEOS& eos);

struct VortexProfile {
    VortexParams params;
    double dr = 0;
    std::vector<double> r, rho1, T;

    // cubic (Catmull-Rom) interpolation of the radial tables; linear near the ends
    double interp_rho1(double rr) const;
    double interp_T(double rr) const;

    // full state at radius r and angle given by the unit tangent direction
    State sample(double x, double y, const MixtureEOS& eos) const;
};

// RK4 integration of the radial ODE from r=0 with (rho1, T) = (rho1_0, T_0).
// Refuses step sizes for which halving still changes T(r_max) by more than
// the stated tolerance.
VortexProfile build_profile(const VortexParams& params, const MixtureEOS& eos,
                            double r_max = 2.0, double dr = 1e-4,
                            double refine_tol = 1e-10);

// Samples the profile onto the grid (cell centers); also usable as the
// DirichletExact boundary sampler.
Field sample_field(const VortexProfile& profile, const Grid& grid, const MixtureEOS& eos);

BoundarySampler vortex_sampler(const VortexProfile& profile, const MixtureEOS& eos);

// Radial CSV dump: r, rho1, rho2, T, vtheta1, vtheta2, alpha1.
void write_profile_csv(const VortexProfile& profile, const std::string& path);

}  // namespace twofluid
