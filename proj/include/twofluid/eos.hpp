#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace twofluid {

// Thermodynamic closures for the ideal-gas two-fluid mixture at a single
// temperature. Everything here is a pure function of (rho1, rho2, T) plus
// material constants, so the routines are templated on the scalar type;
// tests instantiate them with long double to obtain independent
// high-precision reference values.

template <typename Scalar>
struct PhaseParamsT {
    Scalar gamma;  // ratio of specific heats, > 1
    Scalar cv;     // specific heat at constant volume, > 0

    PhaseParamsT(Scalar gamma_, Scalar cv_) : gamma(gamma_), cv(cv_) {
        if (!(gamma > Scalar(1)))
            throw std::domain_error("PhaseParams: gamma must be > 1");
        if (!(cv > Scalar(0)))
            throw std::domain_error("PhaseParams: cv must be > 0");
    }

    // reference temperature of the entropy normalization
    Scalar t0() const { return Scalar(1) / ((gamma - Scalar(1)) * cv); }
};

template <typename Scalar>
struct MixtureEOST {
    PhaseParamsT<Scalar> phase1;
    PhaseParamsT<Scalar> phase2;
    // Weight of phase 2 in the chemical-potential difference driving w.
    // The solver runs the dimensional system, for which the physically
    // consistent value is 1; values != 1 are accepted for regime studies.
    Scalar mach_ratio_C = Scalar(1);
    Scalar tau_alpha = std::numeric_limits<Scalar>::infinity();  // pressure relaxation time
    Scalar tau_w = std::numeric_limits<Scalar>::infinity();      // velocity relaxation time

    MixtureEOST(PhaseParamsT<Scalar> p1, PhaseParamsT<Scalar> p2)
        : phase1(p1), phase2(p2) {}

    MixtureEOST(PhaseParamsT<Scalar> p1, PhaseParamsT<Scalar> p2, Scalar C,
                Scalar ta, Scalar tw)
        : phase1(p1), phase2(p2), mach_ratio_C(C), tau_alpha(ta), tau_w(tw) {
        if (!(mach_ratio_C > Scalar(0)))
            throw std::domain_error("MixtureEOS: mach_ratio_C must be > 0");
        if (!(tau_alpha > Scalar(0)) || !(tau_w > Scalar(0)))
            throw std::domain_error("MixtureEOS: relaxation times must be > 0");
    }

    const PhaseParamsT<Scalar>& phase(int l) const { return l == 0 ? phase1 : phase2; }
};

// Mach number ratio implied by the materials when both phases share the
// reference temperature: C = a2_ref / a1_ref. Used by case setups to pick
// cv2 for a prescribed ratio; it is not fed back into the splitting.
template <typename Scalar>
Scalar mach_ratio_from_materials(const PhaseParamsT<Scalar>& p1,
                                 const PhaseParamsT<Scalar>& p2) {
    using std::sqrt;
    return sqrt(p2.gamma * (p2.gamma - 1) * p2.cv /
                (p1.gamma * (p1.gamma - 1) * p1.cv));
}

// cv2 that realizes a prescribed Mach ratio C for given gamma pair and cv1.
template <typename Scalar>
Scalar cv2_for_mach_ratio(Scalar gamma1, Scalar cv1, Scalar gamma2, Scalar C) {
    return gamma1 * (gamma1 - 1) * cv1 / (gamma2 * (gamma2 - 1)) * C * C;
}

template <typename Scalar>
struct ThermoEvalT {
    Scalar p1, p2, p_mix;
    Scalar s1, s2;
    Scalar mu1, mu2;
    Scalar e1, e2;
    Scalar a1_sq, a2_sq, a_mix_sq;
    Scalar T;
};

namespace detail {
template <typename Scalar>
void require_positive(Scalar v, const char* what) {
    if (!(v > Scalar(0)))
        throw std::domain_error(std::string("eos: nonpositive ") + what);
    if (!(v > Scalar(1e-300)))
        throw std::domain_error(std::string("eos: ") + what + " below log guard");
}
}  // namespace detail

// Phase pressures, entropies, chemical potentials and sound speeds of the
// ideal-gas pair at common temperature T. a_mix_sq is filled by the caller
// that knows the mass fractions (see eval_thermo overload below).
template <typename Scalar>
ThermoEvalT<Scalar> eval_phase_thermo(Scalar rho1, Scalar rho2, Scalar T,
                                      const MixtureEOST<Scalar>& eos) {
    using std::log;
    detail::require_positive(rho1, "rho1");
    detail::require_positive(rho2, "rho2");
    detail::require_positive(T, "temperature");

    ThermoEvalT<Scalar> out;
    out.T = T;
    const auto& ph1 = eos.phase1;
    const auto& ph2 = eos.phase2;
    out.e1 = ph1.cv * T;
    out.e2 = ph2.cv * T;
    out.p1 = (ph1.gamma - 1) * ph1.cv * rho1 * T;
    out.p2 = (ph2.gamma - 1) * ph2.cv * rho2 * T;
    out.s1 = ph1.cv * (log(T / ph1.t0()) - (ph1.gamma - 1) * log(rho1));
    out.s2 = ph2.cv * (log(T / ph2.t0()) - (ph2.gamma - 1) * log(rho2));
    out.mu1 = out.e1 + out.p1 / rho1 - out.s1 * T;
    out.mu2 = out.e2 + out.p2 / rho2 - out.s2 * T;
    out.a1_sq = ph1.gamma * out.p1 / rho1;
    out.a2_sq = ph2.gamma * out.p2 / rho2;
    out.p_mix = std::numeric_limits<Scalar>::quiet_NaN();
    out.a_mix_sq = std::numeric_limits<Scalar>::quiet_NaN();
    return out;
}

// Full evaluation including the volume-fraction weighted mixture pressure
// and the mass-fraction weighted mixture sound speed.
template <typename Scalar>
ThermoEvalT<Scalar> eval_thermo(Scalar alpha1, Scalar rho1, Scalar rho2, Scalar T,
                                const MixtureEOST<Scalar>& eos) {
    ThermoEvalT<Scalar> out = eval_phase_thermo(rho1, rho2, T, eos);
    const Scalar alpha2 = Scalar(1) - alpha1;
    const Scalar m1 = alpha1 * rho1, m2 = alpha2 * rho2;
    const Scalar rho = m1 + m2;
    const Scalar y1 = m1 / rho, y2 = m2 / rho;
    out.p_mix = alpha1 * out.p1 + alpha2 * out.p2;
    out.a_mix_sq = y1 * out.a1_sq + y2 * out.a2_sq;
    return out;
}

// Linear coefficient of the mixture pressure in rhoE:
//   p = (phi_p - 1) (rhoE - rhoE_kin).
// A cv-weighted mean of the gammas, so it stays inside [min gamma, max gamma].
template <typename Scalar>
Scalar phi_p(Scalar alpha1, Scalar alpha2, Scalar rho1, Scalar rho2,
             const MixtureEOST<Scalar>& eos) {
    const Scalar w1 = alpha1 * rho1 * eos.phase1.cv;
    const Scalar w2 = alpha2 * rho2 * eos.phase2.cv;
    const Scalar den = w1 + w2;
    if (!(den > Scalar(0)))
        throw std::domain_error("phi_p: nonpositive cv-weighted density");
    return (eos.phase1.gamma * w1 + eos.phase2.gamma * w2) / den;
}

// Coefficient of the chemical-potential difference in rhoE:
//   mu1 - C^2 mu2 = phi_mu (rhoE - rhoE_kin).
template <typename Scalar>
Scalar phi_mu(const ThermoEvalT<Scalar>& th, Scalar alpha1, Scalar alpha2,
              Scalar rho1, Scalar rho2, const MixtureEOST<Scalar>& eos) {
    const Scalar C2 = eos.mach_ratio_C * eos.mach_ratio_C;
    const Scalar den = alpha1 * rho1 * eos.phase1.cv + C2 * alpha2 * rho2 * eos.phase2.cv;
    if (!(den > Scalar(0)))
        throw std::domain_error("phi_mu: nonpositive weighted density");
    const Scalar num = eos.phase1.gamma * eos.phase1.cv - th.s1 -
                       C2 * (eos.phase2.gamma * eos.phase2.cv - th.s2);
    return num / den;
}

// d(mu1 - C^2 mu2)/d(rhoE) at fixed masses, volume fraction and kinetic
// content. Bounded uniformly in the Mach regime.
template <typename Scalar>
Scalar dmu_dE(const ThermoEvalT<Scalar>& th, Scalar alpha1, Scalar alpha2,
              Scalar rho1, Scalar rho2, const MixtureEOST<Scalar>& eos) {
    const Scalar C2 = eos.mach_ratio_C * eos.mach_ratio_C;
    const Scalar den = alpha1 * rho1 * eos.phase1.cv + C2 * alpha2 * rho2 * eos.phase2.cv;
    if (!(den > Scalar(0)))
        throw std::domain_error("dmu_dE: nonpositive weighted density");
    const Scalar num = eos.phase1.cv * (eos.phase1.gamma - 1) - th.s1 -
                       C2 * (eos.phase2.cv * (eos.phase2.gamma - 1) - th.s2);
    return num / den;
}

// Chemical-potential difference entering the relative-velocity flux.
template <typename Scalar>
Scalar mu_diff(const ThermoEvalT<Scalar>& th, const MixtureEOST<Scalar>& eos) {
    const Scalar C2 = eos.mach_ratio_C * eos.mach_ratio_C;
    return th.mu1 - C2 * th.mu2;
}

using PhaseParams = PhaseParamsT<double>;
using MixtureEOS = MixtureEOST<double>;
using ThermoEval = ThermoEvalT<double>;

}  // namespace twofluid
