#pragma once

#include <Eigen/Dense>

#include "twofluid/eos.hpp"

namespace twofluid {

using Vec2 = Eigen::Vector2d;

// Conserved state of one cell: (alpha1, alpha1 rho1, alpha2 rho2, rho v, w, rhoE).
// Vectors always carry two components; 1D runs keep the y entries at zero.
struct State {
    double alpha1 = 0;
    double m1 = 0;  // alpha1 rho1
    double m2 = 0;  // alpha2 rho2
    Vec2 mom = Vec2::Zero();
    Vec2 w = Vec2::Zero();
    double rhoE = 0;
};

struct Primitives {
    double rho1 = 0, rho2 = 0;
    double rho = 0;
    double y1 = 0, y2 = 0;
    Vec2 v = Vec2::Zero();
    Vec2 v1 = Vec2::Zero();
    Vec2 v2 = Vec2::Zero();
    double T = 0;
    double Ekin = 0;  // |v|^2/2 + y1 y2 |w|^2/2 (specific kinetic content)
};

class AdmissibilityError : public std::runtime_error {
  public:
    explicit AdmissibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr double kAlphaFloor = 1e-8;

inline void check_admissible(const State& q, const MixtureEOS& eos,
                             const char* where = "state") {
    if (!(q.alpha1 >= kAlphaFloor && q.alpha1 <= 1.0 - kAlphaFloor))
        throw AdmissibilityError(std::string(where) + ": alpha1 out of (0,1): " +
                                 std::to_string(q.alpha1));
    if (!(q.m1 > 0) || !(q.m2 > 0))
        throw AdmissibilityError(std::string(where) + ": nonpositive partial density");
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho, y2 = q.m2 / rho;
    const double ekin = 0.5 * q.mom.squaredNorm() / rho + 0.5 * rho * y1 * y2 * q.w.squaredNorm();
    if (!(q.rhoE - ekin > 0))
        throw AdmissibilityError(std::string(where) + ": nonpositive internal energy");
    (void)eos;
}

inline Primitives to_primitives(const State& q, const MixtureEOS& eos) {
    Primitives p;
    p.rho = q.m1 + q.m2;
    if (!(p.rho > 0)) throw AdmissibilityError("to_primitives: nonpositive density");
    p.y1 = q.m1 / p.rho;
    p.y2 = q.m2 / p.rho;
    p.rho1 = q.m1 / q.alpha1;
    p.rho2 = q.m2 / (1.0 - q.alpha1);
    p.v = q.mom / p.rho;
    p.v1 = p.v + p.y2 * q.w;
    p.v2 = p.v - p.y1 * q.w;
    p.Ekin = 0.5 * p.v.squaredNorm() + 0.5 * p.y1 * p.y2 * q.w.squaredNorm();
    const double cvden = q.m1 * eos.phase1.cv + q.m2 * eos.phase2.cv;
    p.T = (q.rhoE - p.rho * p.Ekin) / cvden;
    if (!(p.T > 0))
        throw AdmissibilityError("to_primitives: nonpositive temperature (internal energy)");
    return p;
}

inline State from_primitives(const Primitives& p, double alpha1, const MixtureEOS& eos) {
    State q;
    q.alpha1 = alpha1;
    q.m1 = alpha1 * p.rho1;
    q.m2 = (1.0 - alpha1) * p.rho2;
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho, y2 = q.m2 / rho;
    const Vec2 w = p.v1 - p.v2;
    const Vec2 v = y1 * p.v1 + y2 * p.v2;
    q.mom = rho * v;
    q.w = w;
    const double ekin = 0.5 * v.squaredNorm() + 0.5 * y1 * y2 * w.squaredNorm();
    q.rhoE = (q.m1 * eos.phase1.cv + q.m2 * eos.phase2.cv) * p.T + rho * ekin;
    return q;
}

// Builds a state directly from (alpha1, rho1, rho2, v, w, T).
inline State make_state(double alpha1, double rho1, double rho2, const Vec2& v,
                        const Vec2& w, double T, const MixtureEOS& eos) {
    State q;
    q.alpha1 = alpha1;
    q.m1 = alpha1 * rho1;
    q.m2 = (1.0 - alpha1) * rho2;
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho, y2 = q.m2 / rho;
    q.mom = rho * v;
    q.w = w;
    q.rhoE = (q.m1 * eos.phase1.cv + q.m2 * eos.phase2.cv) * T +
             rho * (0.5 * v.squaredNorm() + 0.5 * y1 * y2 * w.squaredNorm());
    return q;
}

inline ThermoEval eval_thermo(const State& q, const MixtureEOS& eos) {
    const Primitives p = to_primitives(q, eos);
    return eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
}

struct MachNumbers {
    double M1 = 0, M2 = 0, M_mix = 0;
};

// Local phase Mach numbers |v_l|/a_l(T) and the mixture Mach number |v|/a
// with the mass-fraction weighted mixture sound speed.
inline MachNumbers mach_numbers(const Primitives& p, const MixtureEOS& eos) {
    if (!(p.T > 0)) throw std::domain_error("mach_numbers: T must be positive");
    MachNumbers m;
    const double a1 = std::sqrt(eos.phase1.gamma * (eos.phase1.gamma - 1) * eos.phase1.cv * p.T);
    const double a2 = std::sqrt(eos.phase2.gamma * (eos.phase2.gamma - 1) * eos.phase2.cv * p.T);
    const double a_mix = std::sqrt(p.y1 * a1 * a1 + p.y2 * a2 * a2);
    m.M1 = p.v1.norm() / a1;
    m.M2 = p.v2.norm() / a2;
    m.M_mix = p.v.norm() / a_mix;
    return m;
}

// Kinetic part of the total energy density.
inline double rho_ekin(const State& q) {
    const double rho = q.m1 + q.m2;
    const double y1 = q.m1 / rho, y2 = q.m2 / rho;
    return 0.5 * q.mom.squaredNorm() / rho + 0.5 * rho * y1 * y2 * q.w.squaredNorm();
}

}  // namespace twofluid
