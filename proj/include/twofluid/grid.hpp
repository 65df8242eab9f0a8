#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <stdexcept>

#include "twofluid/state.hpp"

namespace twofluid {

enum class BC { Periodic, Transmissive, DirichletExact };
enum Side { XLo = 0, XHi = 1, YLo = 2, YHi = 3 };

// Uniform Cartesian grid, 1D or 2D, with a fixed ghost layer of width 2
// (enough for minmod-MUSCL plus the Rusanov stencil).
struct Grid {
    int dims = 1;
    int nx = 0, ny = 1;
    double x0 = 0, y0 = 0;
    double dx = 0, dy = 1;
    int ghost = 2;
    std::array<BC, 4> bc{BC::Periodic, BC::Periodic, BC::Periodic, BC::Periodic};

    static Grid make_1d(int n, double xa, double xb, BC left, BC right) {
        Grid g;
        g.dims = 1;
        g.nx = n;
        g.ny = 1;
        g.x0 = xa;
        g.dx = (xb - xa) / n;
        g.dy = 1.0;
        g.bc = {left, right, BC::Periodic, BC::Periodic};
        g.validate();
        return g;
    }

    static Grid make_2d(int nx_, int ny_, double xa, double xb, double ya, double yb,
                        std::array<BC, 4> bc_) {
        Grid g;
        g.dims = 2;
        g.nx = nx_;
        g.ny = ny_;
        g.x0 = xa;
        g.y0 = ya;
        g.dx = (xb - xa) / nx_;
        g.dy = (yb - ya) / ny_;
        g.bc = bc_;
        g.validate();
        return g;
    }

    void validate() const {
        if (dims != 1 && dims != 2) throw std::invalid_argument("Grid: dims must be 1 or 2");
        if (nx < 4 || (dims == 2 && ny < 4))
            throw std::invalid_argument("Grid: need at least 4 cells per axis");
        if (!(dx > 0) || (dims == 2 && !(dy > 0)))
            throw std::invalid_argument("Grid: nonpositive cell width");
        if (ghost < 2) throw std::invalid_argument("Grid: ghost width must be >= 2");
    }

    int gy() const { return dims == 2 ? ghost : 0; }
    int stride() const { return nx + 2 * ghost; }
    int total() const { return stride() * (ny + 2 * gy()); }

    // flat index; i in [-ghost, nx+ghost), j in [-gy, ny+gy)
    int idx(int i, int j) const { return (j + gy()) * stride() + (i + ghost); }

    double xc(int i) const { return x0 + (i + 0.5) * dx; }
    double yc(int j) const { return dims == 2 ? y0 + (j + 0.5) * dy : 0.0; }

    double cell_volume() const { return dims == 2 ? dx * dy : dx; }
    double min_dx() const { return dims == 2 ? std::min(dx, dy) : dx; }
};

// Cell data stored as one dense array per component (structure of arrays),
// interior plus ghost cells.
struct Field {
    Grid grid;
    Eigen::ArrayXd alpha1, m1, m2, momx, momy, wx, wy, rhoE;

    explicit Field(const Grid& g) : grid(g) {
        const int n = g.total();
        for (auto* a : components()) a->setZero(n);
    }

    std::array<Eigen::ArrayXd*, 8> components() {
        return {&alpha1, &m1, &m2, &momx, &momy, &wx, &wy, &rhoE};
    }
    std::array<const Eigen::ArrayXd*, 8> components() const {
        return {&alpha1, &m1, &m2, &momx, &momy, &wx, &wy, &rhoE};
    }

    State get(int i, int j) const {
        const int k = grid.idx(i, j);
        State q;
        q.alpha1 = alpha1[k];
        q.m1 = m1[k];
        q.m2 = m2[k];
        q.mom = Vec2(momx[k], momy[k]);
        q.w = Vec2(wx[k], wy[k]);
        q.rhoE = rhoE[k];
        return q;
    }

    void set(int i, int j, const State& q) {
        const int k = grid.idx(i, j);
        alpha1[k] = q.alpha1;
        m1[k] = q.m1;
        m2[k] = q.m2;
        momx[k] = q.mom.x();
        momy[k] = q.mom.y();
        wx[k] = q.w.x();
        wy[k] = q.w.y();
        rhoE[k] = q.rhoE;
    }

    void copy_cell(int src, int dst) {
        for (auto* a : components()) (*a)[dst] = (*a)[src];
    }

    template <typename F>
    void for_interior(F&& f) const {
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) f(i, j);
    }
};

// Exact boundary sampler: state at a physical location (cell center).
using BoundarySampler = std::function<State(double x, double y)>;

// Fills the ghost layers. Periodic wraps, Transmissive copies the nearest
// interior cell outward, DirichletExact samples the provided function at
// ghost-cell centers.
void apply_bc(Field& f, const BoundarySampler& exact = nullptr);

// Interior sums of the conserved components (compensated summation).
struct ConservationTotals {
    double m1 = 0, m2 = 0, momx = 0, momy = 0, rhoE = 0;
};
ConservationTotals conservation_totals(const Field& f);

// Throws AdmissibilityError (with cell coordinates) on the first bad interior cell.
void check_field_admissible(const Field& f, const MixtureEOS& eos, const char* where);

}  // namespace twofluid
