#pragma once

#include <Eigen/Dense>

#include "twofluid/grid.hpp"

namespace twofluid {

using Vec8 = Eigen::Matrix<double, 8, 1>;

// component order shared by Field and flux vectors
enum Comp { CAlpha = 0, CM1, CM2, CMomX, CMomY, CWX, CWY, CE };

inline Vec8 state_to_vec(const State& q) {
    Vec8 u;
    u << q.alpha1, q.m1, q.m2, q.mom.x(), q.mom.y(), q.w.x(), q.w.y(), q.rhoE;
    return u;
}

inline State vec_to_state(const Vec8& u) {
    State q;
    q.alpha1 = u[CAlpha];
    q.m1 = u[CM1];
    q.m2 = u[CM2];
    q.mom = Vec2(u[CMomX], u[CMomY]);
    q.w = Vec2(u[CWX], u[CWY]);
    q.rhoE = u[CE];
    return q;
}

struct WaveSpeeds {
    double lam0 = 0;   // stationary eigenvalue
    double lam_v = 0;  // v . n
    double lam_w = 0;  // (v + (1 - 2 y1) w) . n
    double max_abs() const { return std::max(std::abs(lam_v), std::abs(lam_w)); }
};

WaveSpeeds wave_speeds(const State& q, const Vec2& n);

// Convective flux of the explicitly integrated subsystem along the given axis.
// The volume fraction has no conservative flux; its transport sits in the
// nonconservative product.
Vec8 flux_ex(const State& q, const MixtureEOS& eos, int axis);

// Rusanov flux with the dissipation speed taken as the largest |lambda|
// of the two adjacent states. The dissipation acts on all eight components;
// alpha_dissipation switches the alpha row off for ablation studies.
Vec8 rusanov_flux(const State& qL, const State& qR, const MixtureEOS& eos, int axis,
                  bool alpha_dissipation = true);

// Per-face approximation of the nonconservative product,
// D = 1/2 B(q~) (qR - qL) with q~ the arithmetic average. Carries the
// alpha transport v . grad(alpha) and the (curl w) x v term of the w equation.
Vec8 nonconservative_D(const State& qL, const State& qR, const MixtureEOS& eos, int axis);

// Pointwise B(q) . grad(q) for given one-sided gradients (used by tests and
// manufactured-solution checks). grad_q[c][ax] = d q_c / d x_ax.
Vec8 nonconservative_B(const State& q, const Eigen::Matrix<double, 8, 2>& grad_q);

inline double minmod(double a, double b) {
    if (a * b <= 0) return 0;
    return std::abs(a) < std::abs(b) ? a : b;
}

// Second-order face values from a 3-cell stencil: center -/+ slope/2.
inline std::pair<double, double> minmod_reconstruct(double um, double u0, double up) {
    const double s = minmod(u0 - um, up - u0);
    return {u0 - 0.5 * s, u0 + 0.5 * s};
}

// Flux model used by the finite-volume sweep. The explicit subsystem and the
// unsplit reference solver provide different fluxes and dissipation speeds
// through this interface.
struct FluxModel {
    virtual ~FluxModel() = default;
    virtual Vec8 flux(const State& q, int axis) const = 0;
    virtual double max_speed(const State& q, int axis) const = 0;
    virtual bool alpha_dissipation() const { return true; }
};

struct ExplicitFluxModel final : FluxModel {
    const MixtureEOS& eos;
    bool alpha_diss;
    explicit ExplicitFluxModel(const MixtureEOS& e, bool ad = true) : eos(e), alpha_diss(ad) {}
    Vec8 flux(const State& q, int axis) const override { return flux_ex(q, eos, axis); }
    double max_speed(const State& q, int axis) const override {
        Vec2 n = Vec2::Zero();
        n[axis] = 1.0;
        return wave_speeds(q, n).max_abs();
    }
    bool alpha_dissipation() const override { return alpha_diss; }
};

// rhs += scale * ( -sum_faces (F + D) / vol ) over interior cells.
// Ghost cells of f must be filled; order 2 reconstructs (alpha1, rho1, rho2,
// v, w, T) with the minmod limiter and rebuilds face states.
void fv_rhs(const Field& f, const MixtureEOS& eos, const FluxModel& model, int order,
            Field& rhs, double scale = 1.0);

// Forward-Euler step of the explicit subsystem: f + dt * rhs(f).
// Checks admissibility of the result.
Field explicit_update(const Field& f, const MixtureEOS& eos, double dt, int order,
                      bool alpha_dissipation = true);

}  // namespace twofluid
