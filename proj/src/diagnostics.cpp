#include "twofluid/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace twofluid {

namespace {

void accumulate(VariableErrors& e, const State& a, const State& b, const MixtureEOS& eos,
                double vol) {
    const Primitives pa = to_primitives(a, eos);
    const Primitives pb = to_primitives(b, eos);
    e.alpha1 += std::abs(a.alpha1 - b.alpha1) * vol;
    e.rho1 += std::abs(pa.rho1 - pb.rho1) * vol;
    e.rho2 += std::abs(pa.rho2 - pb.rho2) * vol;
    e.v1x += std::abs(pa.v1.x() - pb.v1.x()) * vol;
    e.v2x += std::abs(pa.v2.x() - pb.v2.x()) * vol;
    e.v1y += std::abs(pa.v1.y() - pb.v1.y()) * vol;
    e.v2y += std::abs(pa.v2.y() - pb.v2.y()) * vol;
    e.T += std::abs(pa.T - pb.T) * vol;
}

}  // namespace

VariableErrors l1_error(const Field& f, const Field& ref, const MixtureEOS& eos) {
    if (f.grid.nx != ref.grid.nx || f.grid.ny != ref.grid.ny)
        throw std::invalid_argument("l1_error: grid mismatch (use a sampler instead)");
    VariableErrors e;
    const double vol = f.grid.cell_volume();
    f.for_interior([&](int i, int j) { accumulate(e, f.get(i, j), ref.get(i, j), eos, vol); });
    return e;
}

VariableErrors l1_error(const Field& f, const BoundarySampler& exact, const MixtureEOS& eos) {
    if (!exact) throw std::invalid_argument("l1_error: null sampler");
    VariableErrors e;
    const double vol = f.grid.cell_volume();
    f.for_interior([&](int i, int j) {
        accumulate(e, f.get(i, j), exact(f.grid.xc(i), f.grid.yc(j)), eos, vol);
    });
    return e;
}

std::vector<double> eoc(const std::vector<double>& errors) {
    if (errors.size() < 2) throw std::invalid_argument("eoc: need at least two errors");
    std::vector<double> out;
    for (size_t k = 0; k + 1 < errors.size(); ++k) {
        if (!(errors[k] > 0) || !(errors[k + 1] > 0)) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        out.push_back(std::log2(errors[k] / errors[k + 1]));
    }
    return out;
}

DivergenceReport discrete_divergence(const Field& f) {
    const Grid& g = f.grid;
    DivergenceReport rep;
    const double vol = g.cell_volume();
    f.for_interior([&](int i, int j) {
        auto vx = [&](int ii, int jj) {
            const int k = g.idx(ii, jj);
            return f.momx[k] / (f.m1[k] + f.m2[k]);
        };
        auto vy = [&](int ii, int jj) {
            const int k = g.idx(ii, jj);
            return f.momy[k] / (f.m1[k] + f.m2[k]);
        };
        double div = (vx(i + 1, j) - vx(i - 1, j)) / (2 * g.dx);
        if (g.dims == 2) div += (vy(i, j + 1) - vy(i, j - 1)) / (2 * g.dy);
        rep.max_abs = std::max(rep.max_abs, std::abs(div));
        rep.l1 += std::abs(div) * vol;
    });
    return rep;
}

double entropy_production(const State& q, const MixtureEOS& eos) {
    const Primitives p = to_primitives(q, eos);
    const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
    double pi = 0;
    if (!std::isinf(eos.tau_alpha)) {
        const double dp = th.p1 - th.p2;
        pi += dp * dp / (p.T * eos.tau_alpha * p.rho * p.rho);
    }
    if (!std::isinf(eos.tau_w)) {
        pi += p.y1 * p.y1 * p.y2 * p.y2 * q.w.squaredNorm() /
              (p.T * eos.tau_w * p.rho * p.rho);
    }
    return pi;
}

EntropyReport entropy_report(const Field& f, const MixtureEOS& eos) {
    EntropyReport rep;
    rep.min_Pi = std::numeric_limits<double>::infinity();
    rep.max_Pi = -std::numeric_limits<double>::infinity();
    const double vol = f.grid.cell_volume();
    f.for_interior([&](int i, int j) {
        const State q = f.get(i, j);
        const Primitives p = to_primitives(q, eos);
        const ThermoEval th = eval_thermo(q.alpha1, p.rho1, p.rho2, p.T, eos);
        rep.total_rhoS += (q.m1 * th.s1 + q.m2 * th.s2) * vol;
        const double pi = entropy_production(q, eos);
        rep.min_Pi = std::min(rep.min_Pi, pi);
        rep.max_Pi = std::max(rep.max_Pi, pi);
    });
    return rep;
}

MachExtrema mach_extrema(const Field& f, const MixtureEOS& eos) {
    MachExtrema m;
    f.for_interior([&](int i, int j) {
        const MachNumbers mn = mach_numbers(to_primitives(f.get(i, j), eos), eos);
        m.M1 = std::max(m.M1, mn.M1);
        m.M2 = std::max(m.M2, mn.M2);
        m.M_mix = std::max(m.M_mix, mn.M_mix);
    });
    return m;
}

std::string FieldReport::csv_header() {
    return "t,dt,sum_m1,sum_m2,sum_momx,sum_momy,sum_rhoE,div_max,div_l1,"
           "mach1_max,mach2_max,mach_mix_max,total_rhoS,pi_min,pi_max,linear_iters,"
           "err_alpha1,err_rho1,err_rho2,err_v1x,err_v2x,err_v1y,err_v2y,err_T";
}

std::string FieldReport::csv_row() const {
    char buf[1024];
    auto opt = [&](double v) { return errors ? v : std::nan(""); };
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                  t, dt, totals.m1, totals.m2, totals.momx, totals.momy, totals.rhoE,
                  divergence.max_abs, divergence.l1, mach.M1, mach.M2, mach.M_mix,
                  entropy.total_rhoS, entropy.min_Pi, entropy.max_Pi, linear_iterations,
                  opt(errors ? errors->alpha1 : 0), opt(errors ? errors->rho1 : 0),
                  opt(errors ? errors->rho2 : 0), opt(errors ? errors->v1x : 0),
                  opt(errors ? errors->v2x : 0), opt(errors ? errors->v1y : 0),
                  opt(errors ? errors->v2y : 0), opt(errors ? errors->T : 0));
    return buf;
}

FieldReport field_report(const Field& f, const MixtureEOS& eos, double t, double dt,
                         int linear_iterations) {
    FieldReport rep;
    rep.t = t;
    rep.dt = dt;
    rep.totals = conservation_totals(f);
    rep.divergence = discrete_divergence(f);
    rep.mach = mach_extrema(f, eos);
    rep.entropy = entropy_report(f, eos);
    rep.linear_iterations = linear_iterations;
    return rep;
}

}  // namespace twofluid
