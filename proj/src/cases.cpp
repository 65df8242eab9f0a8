#include "twofluid/cases.hpp"

#include <cmath>

namespace twofluid {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// rho2 putting the phases in pressure equilibrium at common temperature
double rho2_equilibrium(double rho1, const MixtureEOS& eos) {
    return (eos.phase1.gamma - 1) * eos.phase1.cv /
           ((eos.phase2.gamma - 1) * eos.phase2.cv) * rho1;
}
}  // namespace

CaseSpec riemann_case(RiemannId id, int n_cells) {
    if (n_cells < 8) throw std::invalid_argument("riemann_case: need n >= 8");
    MixtureEOS eos(PhaseParams(1.4, 1.0), PhaseParams(2.0, 1.0), 1.0, kInf, kInf);
    Grid g = Grid::make_1d(n_cells, 0.0, 1.0, BC::Transmissive, BC::Transmissive);
    CaseSpec cs(id == RiemannId::RP1 ? "rp1" : "rp2", g, eos);
    cs.t_final = 0.2;
    cs.nu_order1 = 0.8;
    cs.nu_order2 = 0.4;

    struct Side {
        double alpha, rho1, rho2, v1x, v2x, T;
    };
    Side L, R;
    if (id == RiemannId::RP1) {
        L = {0.3, 2.0, 1.2, 0.0, 0.0, 1.2};
        R = {0.3, 2.0, 2.0, 0.0, 0.0, 1.0};
    } else {
        L = {0.7, 1.0, 2.0, -1.0, -1.0, 1.0};
        R = {0.3, 1.0, 2.0, 1.0, 1.0, 1.0};
    }
    auto state_of = [&](const Side& s) {
        Primitives p;
        p.rho1 = s.rho1;
        p.rho2 = s.rho2;
        p.v1 = Vec2(s.v1x, 0);
        p.v2 = Vec2(s.v2x, 0);
        p.T = s.T;
        return from_primitives(p, s.alpha, cs.eos);
    };
    const State qL = state_of(L), qR = state_of(R);
    for (int i = 0; i < g.nx; ++i) cs.initial.set(i, 0, g.xc(i) < 0.5 ? qL : qR);
    return cs;
}

CaseSpec bubble_case(double C, int n) {
    if (!(C > 0)) throw std::invalid_argument("bubble_case: C must be positive");
    const double gamma1 = 1.4, gamma2 = 2.0, cv1 = 1.0;
    const double cv2 = cv2_for_mach_ratio(gamma1, cv1, gamma2, C);
    const double tau_w = C >= 50.0 ? 1e-12 : 1e-8;
    MixtureEOS eos(PhaseParams(gamma1, cv1), PhaseParams(gamma2, cv2), 1.0, 1e-16, tau_w);
    Grid g = Grid::make_2d(n, n, 0, 1, 0, 1,
                           {BC::Periodic, BC::Periodic, BC::Periodic, BC::Periodic});
    CaseSpec cs("bubble-c" + std::to_string(static_cast<int>(C)), g, eos);
    cs.t_final = 1.0;
    cs.nu_order1 = 0.5;
    cs.nu_order2 = 0.25;

    const double alpha_L = 0.9, alpha_R = 0.1, theta = 2000.0, r0 = 0.2;
    const double rho1 = 2.0, T = 2.0;
    const double rho2 = rho2_equilibrium(rho1, eos);
    const Vec2 v(1.0, 1.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double r = std::hypot(g.xc(i) - 0.5, g.yc(j) - 0.5);
            const double a =
                (alpha_L - alpha_R) * std::atan(-theta * (r - r0)) / kPi + 0.5 * (alpha_L + alpha_R);
            Primitives p;
            p.rho1 = rho1;
            p.rho2 = rho2;
            p.v1 = v;
            p.v2 = v;
            p.T = T;
            cs.initial.set(i, j, from_primitives(p, a, eos));
        }
    return cs;
}

CaseSpec kelvin_helmholtz_case(double eps, int n) {
    const double gamma1 = 2.0, gamma2 = 1.4;
    const double cv1 = 1.0 / (eps * eps);
    const double cv2 = cv2_for_mach_ratio(gamma1, cv1, gamma2, 1.0);
    const double M = 0.1 * eps;  // maximal initial Mach number
    MixtureEOS eos(PhaseParams(gamma1, cv1), PhaseParams(gamma2, cv2), 1.0, 1e-16, M * M);
    Grid g = Grid::make_2d(n, n, 0, 1, 0, 1,
                           {BC::Periodic, BC::Periodic, BC::Periodic, BC::Periodic});
    CaseSpec cs("kh", g, eos);
    cs.t_final = 3.0;
    cs.nu_order1 = 0.25;
    cs.nu_order2 = 0.25;

    const double vL = 0.5, vR = -0.5, vm = 0.5 * (vL - vR), Lw = 0.025;
    const double aL = 0.9, aR = 0.2, am = (aR - aL) / 8.0;
    const double rho1 = 1.0, T = 12.5;
    const double rho2 = rho2_equilibrium(rho1, eos);

    // piecewise-exponential layer profile shared by v_x and alpha
    auto layered = [&](double y, double fL, double fR, double fm) {
        if (y < 0.25) return fL - fm * std::exp((y - 0.25) / Lw);
        if (y < 0.5) return fR + fm * std::exp(-(y - 0.25) / Lw);
        if (y < 0.75) return fR + fm * std::exp((y - 0.75) / Lw);
        return fL - fm * std::exp(-(y - 0.75) / Lw);
    };

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xc(i), y = g.yc(j);
            const double vx = layered(y, vL, vR, vm);
            const double vy = 1e-2 * std::sin(4 * kPi * x);
            const double a = layered(y, aL, aR, am);
            Primitives p;
            p.rho1 = rho1;
            p.rho2 = rho2;
            p.v1 = Vec2(vx, vy);
            p.v2 = Vec2(vx, vy);
            p.T = T;
            cs.initial.set(i, j, from_primitives(p, a, eos));
        }
    return cs;
}

CaseSpec well_prepared_case(double M, AlphaProfile alpha_profile, int n) {
    if (!(M > 0) || M > 1) throw std::invalid_argument("well_prepared_case: M in (0,1]");
    const double gamma1 = 1.4, gamma2 = 2.0;
    const double cv1 = 1.0 / (M * M);
    const double cv2 = cv2_for_mach_ratio(gamma1, cv1, gamma2, 1.0);
    MixtureEOS eos(PhaseParams(gamma1, cv1), PhaseParams(gamma2, cv2), 1.0, 1e-16, M * M);
    Grid g = Grid::make_2d(n, n, 0, 1, 0, 1,
                           {BC::Periodic, BC::Periodic, BC::Periodic, BC::Periodic});
    CaseSpec cs("well-prepared", g, eos);
    cs.t_final = 1.0;
    cs.nu_order1 = 0.5;
    cs.nu_order2 = 0.25;

    const double rho1 = 1.0, T = 1.0;
    const double rho2 = rho2_equilibrium(rho1, eos);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xc(i), y = g.yc(j);
            // curl of psi = sin(2 pi x) sin(2 pi y) / (2 pi): unit maximum speed
            const Vec2 v(std::sin(2 * kPi * x) * std::cos(2 * kPi * y),
                         -std::cos(2 * kPi * x) * std::sin(2 * kPi * y));
            const double a = alpha_profile == AlphaProfile::Constant
                                 ? 0.5
                                 : 0.5 + 0.2 * std::sin(2 * kPi * x) * std::sin(2 * kPi * y);
            Primitives p;
            p.rho1 = rho1;
            p.rho2 = rho2;
            p.v1 = v;
            p.v2 = v;
            p.T = T;
            cs.initial.set(i, j, from_primitives(p, a, eos));
        }
    return cs;
}

MixtureEOS vortex_eos(VortexRegime regime) {
    if (regime == VortexRegime::Compressible)
        return MixtureEOS(PhaseParams(1.4, 1.0), PhaseParams(5.0 / 3.0, 1.0), 1.0, kInf, kInf);
    return MixtureEOS(PhaseParams(2.0, 20.0), PhaseParams(2.8, 20.0), 1.0, kInf, kInf);
}

std::shared_ptr<VortexProfile> vortex_profile(VortexRegime regime, const MixtureEOS& eos) {
    (void)regime;
    VortexParams vp;
    return std::make_shared<VortexProfile>(build_profile(vp, eos));
}

CaseSpec vortex_case(VortexRegime regime, int n, double t_final) {
    MixtureEOS eos = vortex_eos(regime);
    auto profile = vortex_profile(regime, eos);
    Grid g = Grid::make_2d(n, n, -1, 1, -1, 1,
                           {BC::DirichletExact, BC::DirichletExact, BC::DirichletExact,
                            BC::DirichletExact});
    CaseSpec cs(regime == VortexRegime::Compressible ? "vortex-compressible" : "vortex-weak", g,
                eos);
    cs.t_final = t_final;
    cs.nu_order1 = 0.25;
    cs.nu_order2 = 0.25;
    cs.initial = sample_field(*profile, g, eos);
    cs.sampler = vortex_sampler(*profile, eos);
    return cs;
}

namespace {
double param_or(const std::map<std::string, std::string>& params, const std::string& key,
                double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : std::stod(it->second);
}
}  // namespace

CaseSpec make_case(const std::string& name, int n,
                   const std::map<std::string, std::string>& params) {
    CaseSpec cs = [&]() -> CaseSpec {
        if (name == "rp1") return riemann_case(RiemannId::RP1, n);
        if (name == "rp2") return riemann_case(RiemannId::RP2, n);
        if (name == "bubble" || name == "bubble-c10") return bubble_case(param_or(params, "C", 10), n);
        if (name == "bubble-c50") return bubble_case(param_or(params, "C", 50), n);
        if (name == "kh" || name == "kh-m1e-1")
            return kelvin_helmholtz_case(param_or(params, "eps", 1.0), n);
        if (name == "kh-m3e-2") return kelvin_helmholtz_case(param_or(params, "eps", 0.3), n);
        if (name == "well-prepared") {
            auto it = params.find("alpha");
            const AlphaProfile ap = (it != params.end() && it->second == "smooth")
                                        ? AlphaProfile::Smooth
                                        : AlphaProfile::Constant;
            return well_prepared_case(param_or(params, "M", 0.1), ap, n);
        }
        if (name == "vortex-compressible")
            return vortex_case(VortexRegime::Compressible, n, param_or(params, "t_final", 0.1));
        if (name == "vortex-weak")
            return vortex_case(VortexRegime::WeaklyCompressible, n,
                               param_or(params, "t_final", 0.1));
        throw std::invalid_argument("make_case: unknown case '" + name + "'");
    }();
    auto it = params.find("t_final");
    if (it != params.end()) cs.t_final = std::stod(it->second);
    return cs;
}

std::vector<std::string> case_names() {
    return {"rp1",      "rp2",          "bubble-c10",          "bubble-c50",  "kh-m1e-1",
            "kh-m3e-2", "well-prepared", "vortex-compressible", "vortex-weak"};
}

}  // namespace twofluid
