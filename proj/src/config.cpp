#include "twofluid/config.hpp"

#include <cmath>
#include <sstream>

namespace twofluid {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing characters in " + key + ": '" + v + "'");
    return out;
}

std::string fmt(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section at line " +
                                            std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            if (section != "case" && section != "grid" && section != "time" &&
                section != "solver" && section != "output" && section != "physics")
                throw std::invalid_argument("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (section == "case") {
            if (key == "name") cfg.case_name = val;
            else cfg.case_params[key] = val;  // case-specific knobs (C, eps, M, alpha, ...)
        } else if (section == "grid") {
            if (key == "n") cfg.n = static_cast<int>(parse_double(key, val));
            else throw std::invalid_argument("config: unknown key grid." + key);
        } else if (section == "time") {
            if (key == "t_final") cfg.t_final = parse_double(key, val);
            else if (key == "cfl_nu") cfg.cfl_nu = parse_double(key, val);
            else if (key == "order") cfg.order = static_cast<int>(parse_double(key, val));
            else throw std::invalid_argument("config: unknown key time." + key);
        } else if (section == "solver") {
            if (key == "rtol") cfg.solver.rtol = parse_double(key, val);
            else if (key == "atol") cfg.solver.atol = parse_double(key, val);
            else if (key == "max_iter") cfg.solver.max_iter = static_cast<int>(parse_double(key, val));
            else if (key == "restart") cfg.solver.restart = static_cast<int>(parse_double(key, val));
            else throw std::invalid_argument("config: unknown key solver." + key);
        } else if (section == "output") {
            if (key == "dir") cfg.output_dir = val;
            else if (key == "cadence") cfg.cadence = parse_double(key, val);
            else if (key == "formats") {
                cfg.write_csv = val.find("csv") != std::string::npos;
                cfg.write_vtk = val.find("vtk") != std::string::npos;
                if (!cfg.write_csv && !cfg.write_vtk)
                    throw std::invalid_argument("config: output.formats must mention csv or vtk");
            } else throw std::invalid_argument("config: unknown key output." + key);
        } else if (section == "physics") {
            if (key == "gamma1") cfg.gamma1 = parse_double(key, val);
            else if (key == "gamma2") cfg.gamma2 = parse_double(key, val);
            else if (key == "cv1") cfg.cv1 = parse_double(key, val);
            else if (key == "cv2") cfg.cv2 = parse_double(key, val);
            else if (key == "tau_alpha") cfg.tau_alpha = parse_double(key, val);
            else if (key == "tau_w") cfg.tau_w = parse_double(key, val);
            else if (key == "mach_ratio_C") cfg.mach_ratio_C = parse_double(key, val);
            else throw std::invalid_argument("config: unknown key physics." + key);
        } else {
            throw std::invalid_argument("config: key outside of any section at line " +
                                        std::to_string(lineno));
        }
    }
    if (cfg.order != 1 && cfg.order != 2)
        throw std::invalid_argument("config: time.order must be 1 or 2");
    if (cfg.n < 4) throw std::invalid_argument("config: grid.n must be at least 4");
    return cfg;
}

std::string ConfigFile::serialize() const {
    std::ostringstream out;
    out << "[case]\n";
    out << "name = " << case_name << "\n";
    for (const auto& [k, v] : case_params) out << k << " = " << v << "\n";
    out << "[grid]\n";
    out << "n = " << n << "\n";
    out << "[time]\n";
    if (t_final >= 0) out << "t_final = " << fmt(t_final) << "\n";
    if (cfl_nu >= 0) out << "cfl_nu = " << fmt(cfl_nu) << "\n";
    out << "order = " << order << "\n";
    out << "[solver]\n";
    out << "rtol = " << fmt(solver.rtol) << "\n";
    out << "atol = " << fmt(solver.atol) << "\n";
    out << "max_iter = " << solver.max_iter << "\n";
    out << "restart = " << solver.restart << "\n";
    out << "[output]\n";
    out << "dir = " << output_dir << "\n";
    out << "cadence = " << fmt(cadence) << "\n";
    out << "formats = " << (write_csv ? (write_vtk ? "csv,vtk" : "csv") : "vtk") << "\n";
    out << "[physics]\n";
    if (gamma1) out << "gamma1 = " << fmt(*gamma1) << "\n";
    if (gamma2) out << "gamma2 = " << fmt(*gamma2) << "\n";
    if (cv1) out << "cv1 = " << fmt(*cv1) << "\n";
    if (cv2) out << "cv2 = " << fmt(*cv2) << "\n";
    if (tau_alpha) out << "tau_alpha = " << fmt(*tau_alpha) << "\n";
    if (tau_w) out << "tau_w = " << fmt(*tau_w) << "\n";
    if (mach_ratio_C) out << "mach_ratio_C = " << fmt(*mach_ratio_C) << "\n";
    return out.str();
}

RunSetup assemble_run(const ConfigFile& cfg) {
    CaseSpec spec = make_case(cfg.case_name, cfg.n, cfg.case_params);

    if (cfg.gamma1 || cfg.gamma2 || cfg.cv1 || cfg.cv2 || cfg.tau_alpha || cfg.tau_w ||
        cfg.mach_ratio_C) {
        const MixtureEOS old = spec.eos;
        PhaseParams p1(cfg.gamma1.value_or(old.phase1.gamma), cfg.cv1.value_or(old.phase1.cv));
        PhaseParams p2(cfg.gamma2.value_or(old.phase2.gamma), cfg.cv2.value_or(old.phase2.cv));
        MixtureEOS eos(p1, p2, cfg.mach_ratio_C.value_or(old.mach_ratio_C),
                       cfg.tau_alpha.value_or(old.tau_alpha), cfg.tau_w.value_or(old.tau_w));
        // material overrides reinterpret the initial data in primitive form
        const bool material_change = cfg.gamma1 || cfg.gamma2 || cfg.cv1 || cfg.cv2;
        if (material_change) {
            spec.initial.for_interior([&](int i, int j) {
                const State q = spec.initial.get(i, j);
                const Primitives p = to_primitives(q, old);
                spec.initial.set(i, j, from_primitives(p, q.alpha1, eos));
            });
        }
        spec.eos = eos;
    }

    RunSetup setup{std::move(spec), RunParams{}};
    setup.params.t_final = cfg.t_final >= 0 ? cfg.t_final : setup.spec.t_final;
    setup.params.order = cfg.order;
    setup.params.cfl_nu = cfg.cfl_nu >= 0
                              ? cfg.cfl_nu
                              : (cfg.order >= 2 ? setup.spec.nu_order2 : setup.spec.nu_order1);
    setup.params.output_dt = cfg.cadence;
    return setup;
}

}  // namespace twofluid
