#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <vector>

#include "twofluid/explicit_stage.hpp"
#include "twofluid/grid.hpp"

namespace twofluid {

// Constant reference state of the RS linearization. The four constants are
// frozen at setup; per-cell reference quantities combine them with the local
// volume fraction and kinetic content.
struct ReferenceState {
    double rho1_rs = 1, rho2_rs = 1;
    double T_rs = 1;
    double rhoe1_rs = 1, rhoe2_rs = 1;  // rho_l,rs cv_l T_rs

    static ReferenceState from_constants(double rho1, double rho2, double T,
                                         const MixtureEOS& eos) {
        ReferenceState rs;
        rs.rho1_rs = rho1;
        rs.rho2_rs = rho2;
        rs.T_rs = T;
        rs.rhoe1_rs = rho1 * eos.phase1.cv * T;
        rs.rhoe2_rs = rho2 * eos.phase2.cv * T;
        if (!(rho1 > 0) || !(rho2 > 0) || !(T > 0))
            throw std::domain_error("ReferenceState: constants must be positive");
        return rs;
    }

    // Volume-weighted domain averages of the initial phase densities and a
    // single consistent temperature. A single T_rs keeps mu(q_RS) constant
    // in space, which the fully discrete form relies on.
    static ReferenceState from_field(const Field& f, const MixtureEOS& eos);

    // rhoE of the reference state at a cell carrying (alpha1, v, w).
    double rhoE_rs(const State& q) const {
        const double a1 = q.alpha1, a2 = 1.0 - a1;
        const double rho0 = a1 * rho1_rs + a2 * rho2_rs;
        const double y1 = a1 * rho1_rs / rho0, y2 = 1.0 - y1;
        const double rho = q.m1 + q.m2;
        const Vec2 v = q.mom / rho;
        const double ekin = 0.5 * v.squaredNorm() + 0.5 * y1 * y2 * q.w.squaredNorm();
        return a1 * rhoe1_rs + a2 * rhoe2_rs + rho0 * ekin;
    }
};

// mu_hat_rs, dmu_rs and the nonlinear remainder mu_bar of the split
// mu = (mu_hat_rs + dmu_rs rhoE) + mu_bar around the reference state.
struct MuSplit {
    double mu_hat_rs = 0;
    double dmu_rs = 0;
    double mu_bar = 0;
};

MuSplit linearize_mu(const State& q, const ReferenceState& rs, const MixtureEOS& eos);

struct SolverControls {
    double rtol = 1e-10;
    double atol = 1e-14;
    int max_iter = 400;
    int restart = 30;
};

// Linear system (I - dt^2 (L + K)) rhoE = rhs over the interior cells,
// assembled with face-averaged coefficients; strictly diagonally dominant.
struct EllipticSystem {
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
    Eigen::VectorXd rhs;
    SolverControls controls;
};

struct LinearSolveResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0;
};

// Restarted GMRES with Jacobi (diagonal) right-preconditioning. Converges
// when the true residual satisfies ||r|| <= max(rtol ||rhs||, atol); throws
// with the residual history tail otherwise.
LinearSolveResult solve_energy(const EllipticSystem& sys);

class NonConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class EllipticClosure { Neumann, DirichletGhost };

struct ImplicitConfig {
    SolverControls solver;
    // closure of the dt^2 stencil on non-periodic sides
    EllipticClosure closure = EllipticClosure::DirichletGhost;
    // evaluate the kinetic part of p^{n+1} at the post-explicit state
    bool kin_energy_from_star = false;
};

struct ImplicitStats {
    int gmres_iterations = 0;
    double gmres_residual = 0;
    int newton_max_iterations = 0;
};

// Backward-Euler pressure relaxation of the volume fraction on one cell.
// Masses, momentum, w and rhoE are held fixed; returns the new alpha1.
double relax_alpha_cell(const State& q, double dt, const MixtureEOS& eos,
                        int* newton_iters = nullptr);

// The linear-implicit subsystem update. f_star is the post-explicit stage
// state (masses already final); f_old supplies the frozen coefficients.
// Both fields must have their ghost cells filled.
class ImplicitStage {
  public:
    ImplicitStage(const MixtureEOS& eos, const ReferenceState& rs, ImplicitConfig cfg = {})
        : eos_(eos), rs_(rs), cfg_(cfg) {}

    EllipticSystem assemble_energy_system(const Field& f_star, const Field& f_old,
                                          double dt) const;

    // Full update: energy solve, then w, momentum and the alpha relaxation.
    Field advance(const Field& f_star, const Field& f_old, double dt,
                  const BoundarySampler& sampler = nullptr,
                  ImplicitStats* stats = nullptr) const;

    const ReferenceState& reference() const { return rs_; }
    const ImplicitConfig& config() const { return cfg_; }

  private:
    struct Coefficients;
    void compute_coefficients(const Field& f_star, const Field& f_old, double dt,
                              Coefficients& c) const;
    EllipticSystem assemble_impl(const Coefficients& c, const Field& f_star, double dt) const;

    const MixtureEOS& eos_;
    ReferenceState rs_;
    ImplicitConfig cfg_;
};

}  // namespace twofluid
