#include "twofluid/grid.hpp"

namespace twofluid {

namespace {

void fill_x(Field& f, const BoundarySampler& exact) {
    const Grid& g = f.grid;
    // interior rows only; the y-pass afterwards extends the ghost columns so
    // that corner ghosts are defined for every boundary type
    const int jlo = 0, jhi = g.ny;
    for (int j = jlo; j < jhi; ++j) {
        for (int k = 1; k <= g.ghost; ++k) {
            // left side
            switch (g.bc[XLo]) {
                case BC::Periodic:
                    f.copy_cell(g.idx(g.nx - k, j), g.idx(-k, j));
                    break;
                case BC::Transmissive:
                    f.copy_cell(g.idx(0, j), g.idx(-k, j));
                    break;
                case BC::DirichletExact:
                    if (!exact)
                        throw std::invalid_argument("apply_bc: DirichletExact needs a sampler");
                    f.set(-k, j, exact(g.xc(-k), g.yc(j)));
                    break;
            }
            // right side
            switch (g.bc[XHi]) {
                case BC::Periodic:
                    f.copy_cell(g.idx(k - 1, j), g.idx(g.nx + k - 1, j));
                    break;
                case BC::Transmissive:
                    f.copy_cell(g.idx(g.nx - 1, j), g.idx(g.nx + k - 1, j));
                    break;
                case BC::DirichletExact:
                    if (!exact)
                        throw std::invalid_argument("apply_bc: DirichletExact needs a sampler");
                    f.set(g.nx + k - 1, j, exact(g.xc(g.nx + k - 1), g.yc(j)));
                    break;
            }
        }
    }
}

void fill_y(Field& f, const BoundarySampler& exact) {
    const Grid& g = f.grid;
    for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
        for (int k = 1; k <= g.ghost; ++k) {
            switch (g.bc[YLo]) {
                case BC::Periodic:
                    f.copy_cell(g.idx(i, g.ny - k), g.idx(i, -k));
                    break;
                case BC::Transmissive:
                    f.copy_cell(g.idx(i, 0), g.idx(i, -k));
                    break;
                case BC::DirichletExact:
                    if (!exact)
                        throw std::invalid_argument("apply_bc: DirichletExact needs a sampler");
                    f.set(i, -k, exact(g.xc(i), g.yc(-k)));
                    break;
            }
            switch (g.bc[YHi]) {
                case BC::Periodic:
                    f.copy_cell(g.idx(i, k - 1), g.idx(i, g.ny + k - 1));
                    break;
                case BC::Transmissive:
                    f.copy_cell(g.idx(i, g.ny - 1), g.idx(i, g.ny + k - 1));
                    break;
                case BC::DirichletExact:
                    if (!exact)
                        throw std::invalid_argument("apply_bc: DirichletExact needs a sampler");
                    f.set(i, g.ny + k - 1, exact(g.xc(i), g.yc(g.ny + k - 1)));
                    break;
            }
        }
    }
}

}  // namespace

void apply_bc(Field& f, const BoundarySampler& exact) {
    fill_x(f, exact);
    if (f.grid.dims == 2) fill_y(f, exact);
}

namespace {
struct Kahan {
    double sum = 0, c = 0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};
}  // namespace

ConservationTotals conservation_totals(const Field& f) {
    Kahan m1, m2, mx, my, e;
    f.for_interior([&](int i, int j) {
        const int k = f.grid.idx(i, j);
        m1.add(f.m1[k]);
        m2.add(f.m2[k]);
        mx.add(f.momx[k]);
        my.add(f.momy[k]);
        e.add(f.rhoE[k]);
    });
    const double vol = f.grid.cell_volume();
    return {m1.sum * vol, m2.sum * vol, mx.sum * vol, my.sum * vol, e.sum * vol};
}

void check_field_admissible(const Field& f, const MixtureEOS& eos, const char* where) {
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i) {
            try {
                check_admissible(f.get(i, j), eos, where);
            } catch (const AdmissibilityError& err) {
                throw AdmissibilityError(std::string(err.what()) + " at cell (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
}

}  // namespace twofluid
