#include "twofluid/vortex.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace twofluid {

std::pair<double, double> vortex_rhs(double r, double rho1, double T,
                                     const VortexParams& params, const MixtureEOS& eos) {
    const double g1 = eos.phase1.gamma, g2 = eos.phase2.gamma;
    const double cv1 = eos.phase1.cv, cv2 = eos.phase2.cv;
    const double a1 = params.alpha(r), a2 = 1.0 - a1;
    const double rho2 = params.c_rho * rho1;

    const ThermoEval th = eval_phase_thermo(rho1, rho2, T, eos);

    // rows: d(alpha1 p1 + alpha2 p2)/dr = centrifugal, d(mu1 - mu2)/dr = kinetic terms
    const double M11 = a1 * (g1 - 1) * cv1 * T + a2 * params.c_rho * (g2 - 1) * cv2 * T;
    const double M12 = a1 * (g1 - 1) * cv1 * rho1 + a2 * (g2 - 1) * cv2 * rho2;
    const double M21 = (g1 - 1) * cv1 * T / rho1 - params.c_rho * (g2 - 1) * cv2 * T / rho2;
    const double M22 = ((g1 - 1) * cv1 - th.s1) - ((g2 - 1) * cv2 - th.s2);

    double b1 = 0, b2 = 0;
    const double v1 = params.vtheta(0, r), v2 = params.vtheta(1, r);
    const double dal = params.dalpha_dr(r);
    if (r > 1e-14) {
        const double centrifugal = (a1 * rho1 * v1 * v1 + a2 * rho2 * v2 * v2) / r;
        b1 = centrifugal - (th.p1 - th.p2) * dal;
        const double dv1 = params.dvtheta_dr(0, r), dv2 = params.dvtheta_dr(1, r);
        const double rho = a1 * rho1 + a2 * rho2;
        const double y1 = a1 * rho1 / rho;
        const double v = y1 * v1 + (1 - y1) * v2;
        const double w = v1 - v2;
        const double dw = dv1 - dv2;
        b2 = -(v1 * dv1 - v2 * dv2) + v * (w / r + dw);
    } else {
        // v_theta ~ r: the centrifugal and curl terms vanish at the axis
        b1 = -(th.p1 - th.p2) * dal;
        b2 = 0.0;
    }

    const double det = M11 * M22 - M12 * M21;
    if (std::abs(det) < 1e-14 * (std::abs(M11 * M22) + std::abs(M12 * M21) + 1e-300))
        throw std::domain_error("vortex_rhs: singular system (coincident phases)");
    return {(M22 * b1 - M12 * b2) / det, (M11 * b2 - M21 * b1) / det};
}

namespace {

std::pair<std::vector<double>, std::vector<double>> integrate(const VortexParams& p,
                                                              const MixtureEOS& eos,
                                                              double r_max, double dr) {
    const int n = static_cast<int>(std::ceil(r_max / dr));
    std::vector<double> rho1(n + 1), T(n + 1);
    rho1[0] = p.rho1_0;
    T[0] = p.T_0;
    double r = 0, u = p.rho1_0, v = p.T_0;
    for (int i = 0; i < n; ++i) {
        const auto k1 = vortex_rhs(r, u, v, p, eos);
        const auto k2 = vortex_rhs(r + dr / 2, u + dr / 2 * k1.first, v + dr / 2 * k1.second, p, eos);
        const auto k3 = vortex_rhs(r + dr / 2, u + dr / 2 * k2.first, v + dr / 2 * k2.second, p, eos);
        const auto k4 = vortex_rhs(r + dr, u + dr * k3.first, v + dr * k3.second, p, eos);
        u += dr / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
        v += dr / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
        r += dr;
        rho1[i + 1] = u;
        T[i + 1] = v;
    }
    return {rho1, T};
}

}  // namespace

VortexProfile build_profile(const VortexParams& params, const MixtureEOS& eos, double r_max,
                            double dr, double refine_tol) {
    auto coarse = integrate(params, eos, r_max, dr);
    auto fine = integrate(params, eos, r_max, dr / 2);
    const double diff = std::abs(fine.second.back() - coarse.second.back());
    if (diff > refine_tol)
        throw std::runtime_error("build_profile: dr too coarse, halving changes T(r_max) by " +
                                 std::to_string(diff));
    VortexProfile prof;
    prof.params = params;
    prof.dr = dr;
    const int n = static_cast<int>(coarse.first.size());
    prof.r.resize(n);
    for (int i = 0; i < n; ++i) prof.r[i] = i * dr;
    prof.rho1 = std::move(coarse.first);
    prof.T = std::move(coarse.second);
    return prof;
}

namespace {

double catmull_rom(const std::vector<double>& xs, const std::vector<double>& ys, double dr,
                   double x) {
    const int n = static_cast<int>(xs.size());
    if (x <= 0) return ys[0];
    if (x >= xs[n - 1])
        throw std::out_of_range("vortex profile: radius beyond table (r=" + std::to_string(x) + ")");
    const int i = std::min(static_cast<int>(x / dr), n - 2);
    const double t = (x - xs[i]) / dr;
    if (i == 0 || i >= n - 2) return ys[i] * (1 - t) + ys[i + 1] * t;  // linear at ends
    const double pm = ys[i - 1], p0 = ys[i], p1 = ys[i + 1], p2 = ys[i + 2];
    return p0 + 0.5 * t * (p1 - pm + t * (2 * pm - 5 * p0 + 4 * p1 - p2 +
                                          t * (3 * (p0 - p1) + p2 - pm)));
}

}  // namespace

double VortexProfile::interp_rho1(double rr) const { return catmull_rom(r, rho1, dr, rr); }
double VortexProfile::interp_T(double rr) const { return catmull_rom(r, T, dr, rr); }

State VortexProfile::sample(double x, double y, const MixtureEOS& eos) const {
    const double rr = std::hypot(x, y);
    const double rho1_v = interp_rho1(rr);
    const double T_v = interp_T(rr);
    const double rho2_v = params.c_rho * rho1_v;
    const double a1 = params.alpha(rr);

    Vec2 v1 = Vec2::Zero(), v2 = Vec2::Zero();
    if (rr > 1e-14) {
        const Vec2 tangent(-y / rr, x / rr);
        v1 = params.vtheta(0, rr) * tangent;
        v2 = params.vtheta(1, rr) * tangent;
    }
    Primitives p;
    p.rho1 = rho1_v;
    p.rho2 = rho2_v;
    p.v1 = v1;
    p.v2 = v2;
    p.T = T_v;
    return from_primitives(p, a1, eos);
}

Field sample_field(const VortexProfile& profile, const Grid& grid, const MixtureEOS& eos) {
    Field f(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            f.set(i, j, profile.sample(grid.xc(i), grid.yc(j), eos));
    return f;
}

BoundarySampler vortex_sampler(const VortexProfile& profile, const MixtureEOS& eos) {
    // captured by value so the sampler owns its data
    return [profile, eos](double x, double y) { return profile.sample(x, y, eos); };
}

void write_profile_csv(const VortexProfile& profile, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("write_profile_csv: cannot open " + path);
    std::fprintf(fp, "r,rho1,rho2,T,vtheta1,vtheta2,alpha1\n");
    for (size_t i = 0; i < profile.r.size(); ++i) {
        const double r = profile.r[i];
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, profile.rho1[i],
                     profile.params.c_rho * profile.rho1[i], profile.T[i],
                     profile.params.vtheta(0, r), profile.params.vtheta(1, r),
                     profile.params.alpha(r));
    }
    std::fclose(fp);
}

}  // namespace twofluid
