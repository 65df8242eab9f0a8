#include "twofluid/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace twofluid {

namespace {
const char* kCsvHeader = "x,y,alpha1,rho1,rho2,v1x,v1y,v2x,v2y,wx,wy,T,p_mix,M_mix";
}

void write_field_csv(const Field& f, const MixtureEOS& eos, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("write_field_csv: cannot open " + path);
    std::fprintf(fp, "%s\n", kCsvHeader);
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i) {
            const State q = f.get(i, j);
            const Primitives p = to_primitives(q, eos);
            const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
            const MachNumbers m = mach_numbers(p, eos);
            std::fprintf(fp,
                         "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                         "%.17g,%.17g,%.17g\n",
                         f.grid.xc(i), f.grid.yc(j), q.alpha1, p.rho1, p.rho2, p.v1.x(),
                         p.v1.y(), p.v2.x(), p.v2.y(), q.w.x(), q.w.y(), p.T, th.p_mix,
                         m.M_mix);
        }
    std::fclose(fp);
}

Field read_field_csv(const Grid& grid, const MixtureEOS& eos, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("read_field_csv: unexpected header in " + path);
    Field f(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            if (!std::getline(in, line))
                throw std::runtime_error("read_field_csv: truncated file " + path);
            double col[14];
            int c = 0;
            const char* s = line.c_str();
            char* end = nullptr;
            for (; c < 14; ++c) {
                col[c] = std::strtod(s, &end);
                if (end == s) break;
                s = *end == ',' ? end + 1 : end;
            }
            if (c != 14) throw std::runtime_error("read_field_csv: malformed row in " + path);
            Primitives p;
            p.rho1 = col[3];
            p.rho2 = col[4];
            p.v1 = Vec2(col[5], col[6]);
            p.v2 = Vec2(col[7], col[8]);
            p.T = col[11];
            f.set(i, j, from_primitives(p, col[2], eos));
        }
    return f;
}

void write_field_vtk(const Field& f, const MixtureEOS& eos, const std::string& path) {
    const Grid& g = f.grid;
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("write_field_vtk: cannot open " + path);
    std::fprintf(fp, "# vtk DataFile Version 3.0\ntwo-fluid field\nASCII\n");
    std::fprintf(fp, "DATASET STRUCTURED_POINTS\n");
    std::fprintf(fp, "DIMENSIONS %d %d 1\n", g.nx, g.ny);
    std::fprintf(fp, "ORIGIN %.17g %.17g 0\n", g.xc(0), g.yc(0));
    std::fprintf(fp, "SPACING %.17g %.17g 1\n", g.dx, g.dims == 2 ? g.dy : 1.0);
    std::fprintf(fp, "POINT_DATA %d\n", g.nx * g.ny);

    std::vector<Primitives> prim(static_cast<size_t>(g.nx) * g.ny);
    std::vector<State> st(prim.size());
    size_t c = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i, ++c) {
            st[c] = f.get(i, j);
            prim[c] = to_primitives(st[c], eos);
        }

    auto scalar = [&](const char* name, auto&& get) {
        std::fprintf(fp, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
        for (size_t k = 0; k < prim.size(); ++k) std::fprintf(fp, "%.17g\n", get(k));
    };
    scalar("alpha1", [&](size_t k) { return st[k].alpha1; });
    scalar("rho1", [&](size_t k) { return prim[k].rho1; });
    scalar("rho2", [&](size_t k) { return prim[k].rho2; });
    scalar("T", [&](size_t k) { return prim[k].T; });
    scalar("p_mix", [&](size_t k) {
        const ThermoEval th =
            eval_thermo(st[k].alpha1, prim[k].rho1, prim[k].rho2, prim[k].T, eos);
        return th.p_mix;
    });
    scalar("M_mix", [&](size_t k) { return mach_numbers(prim[k], eos).M_mix; });

    auto vector_field = [&](const char* name, auto&& get) {
        std::fprintf(fp, "VECTORS %s double\n", name);
        for (size_t k = 0; k < prim.size(); ++k) {
            const Vec2 v = get(k);
            std::fprintf(fp, "%.17g %.17g 0\n", v.x(), v.y());
        }
    };
    vector_field("v1", [&](size_t k) { return prim[k].v1; });
    vector_field("v2", [&](size_t k) { return prim[k].v2; });
    vector_field("w", [&](size_t k) { return st[k].w; });
    std::fclose(fp);
}

std::string diagonal_slice_csv(const Field& f, const MixtureEOS& eos) {
    const Grid& g = f.grid;
    if (g.dims != 2 || g.nx != g.ny)
        throw std::invalid_argument("diagonal_slice_csv: needs a square 2D grid");
    std::ostringstream out;
    out << "s,alpha1,M_mix\n";
    char buf[128];
    for (int i = 0; i < g.nx; ++i) {
        const State q = f.get(i, i);
        const Primitives p = to_primitives(q, eos);
        const double s = std::hypot(g.xc(i) - g.x0, g.yc(i) - g.y0);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s, q.alpha1,
                      mach_numbers(p, eos).M_mix);
        out << buf;
    }
    return out.str();
}

}  // namespace twofluid
