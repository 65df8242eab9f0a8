#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "twofluid/config.hpp"
#include "twofluid/diagnostics.hpp"
#include "twofluid/io.hpp"
#include "twofluid/reference_solver.hpp"

namespace fs = std::filesystem;
using namespace twofluid;

namespace {

fs::path resolve_output_dir(const std::string& dir) {
    const char* env = std::getenv("TWOFLUID_OUTPUT_DIR");
    fs::path out = env && *env ? fs::path(env) : fs::path(dir);
    fs::create_directories(out);
    return out;
}

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& kvs) {
    std::map<std::string, std::string> out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param expects key=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

struct RunAccounting {
    long linear_iters_total = 0;
    long steps = 0;
};

int do_run(const ConfigFile& cfg) {
    RunSetup setup = assemble_run(cfg);
    const fs::path out = resolve_output_dir(cfg.output_dir);
    const auto t0 = std::chrono::steady_clock::now();

    apply_bc(setup.spec.initial, setup.spec.sampler);
    const ReferenceState rs = ReferenceState::from_field(setup.spec.initial, setup.spec.eos);
    const ButcherPair tab = ButcherPair::for_order(setup.params.order);

    const ConservationTotals initial_totals = conservation_totals(setup.spec.initial);
    std::ofstream report(out / (setup.spec.name + "_report.csv"));
    report << FieldReport::csv_header() << "\n";

    RunAccounting acct;
    int snapshot = 0;
    double last_dt = 0;
    auto on_output = [&](const Field& f, double t, long step) {
        (void)step;
        FieldReport rep = field_report(f, setup.spec.eos, t, last_dt);
        report << rep.csv_row() << "\n";
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%04d", setup.spec.name.c_str(), snapshot++);
        if (cfg.write_csv)
            write_field_csv(f, setup.spec.eos, (out / (std::string(name) + ".csv")).string());
        if (cfg.write_vtk)
            write_field_vtk(f, setup.spec.eos, (out / (std::string(name) + ".vtk")).string());
    };
    auto on_step = [&](const Field&, const StepInfo& info) {
        last_dt = info.dt;
        acct.linear_iters_total += info.stats.implicit.gmres_iterations;
        acct.steps = info.step;
    };

    ImplicitConfig icfg;
    icfg.solver = cfg.solver;
    Field final_field = run(setup.spec.initial, setup.spec.eos, rs, tab, setup.params,
                            setup.spec.sampler, on_output, on_step, icfg);

    const auto t1 = std::chrono::steady_clock::now();
    const double wall = std::chrono::duration<double>(t1 - t0).count();
    const ConservationTotals ft = conservation_totals(final_field);
    auto drift = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };
    std::cout << "case " << setup.spec.name << " n=" << cfg.n << " order=" << setup.params.order
              << " nu=" << setup.params.cfl_nu << "\n";
    std::cout << "steps " << acct.steps << ", wall " << wall << " s, linear iterations "
              << acct.linear_iters_total << "\n";
    std::cout << "conservation drift: m1 " << drift(ft.m1, initial_totals.m1) << ", m2 "
              << drift(ft.m2, initial_totals.m2) << ", rhoE " << drift(ft.rhoE, initial_totals.rhoE)
              << "\n";
    std::cout << "outputs in " << out.string() << "\n";
    return 0;
}

int do_convergence(const std::string& case_name, std::vector<int> resolutions, int order,
                   double nu, double t_final, const std::string& dir) {
    if (case_name != "vortex-compressible" && case_name != "vortex-weak")
        throw CLI::ValidationError("convergence needs a case with an exact solution "
                                   "(vortex-compressible or vortex-weak)");
    const fs::path out = resolve_output_dir(dir);
    std::vector<VariableErrors> errs;

    for (int n : resolutions) {
        std::map<std::string, std::string> params;
        if (t_final > 0) params["t_final"] = std::to_string(t_final);
        CaseSpec spec = make_case(case_name, n, params);
        RunParams rp;
        rp.t_final = spec.t_final;
        rp.order = order;
        rp.cfl_nu = nu > 0 ? nu : (order >= 2 ? spec.nu_order2 : spec.nu_order1);
        const ReferenceState rs = ReferenceState::from_field(spec.initial, spec.eos);
        Field final_field = run(spec.initial, spec.eos, rs, ButcherPair::for_order(order), rp,
                                spec.sampler);
        errs.push_back(l1_error(final_field, spec.sampler, spec.eos));
        std::cout << "n=" << n << " done (alpha1 err " << errs.back().alpha1 << ")\n";
    }

    // table: variable rows, (error, EOC) column pairs
    std::ostringstream table;
    table << "variable";
    for (size_t k = 0; k < resolutions.size(); ++k) {
        table << "," << resolutions[k];
        if (k > 0) table << ",eoc";
    }
    table << "\n";
    auto row = [&](const char* name, auto member) {
        table << name;
        for (size_t k = 0; k < errs.size(); ++k) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3e", errs[k].*member);
            table << "," << buf;
            if (k > 0) {
                std::snprintf(buf, sizeof(buf), "%.2f",
                              std::log2(errs[k - 1].*member / (errs[k].*member)));
                table << "," << buf;
            }
        }
        table << "\n";
    };
    row("alpha1", &VariableErrors::alpha1);
    row("rho1", &VariableErrors::rho1);
    row("rho2", &VariableErrors::rho2);
    row("v1x", &VariableErrors::v1x);
    row("v2x", &VariableErrors::v2x);
    row("v1y", &VariableErrors::v1y);
    row("v2y", &VariableErrors::v2y);
    row("T", &VariableErrors::T);

    std::cout << table.str();
    std::ofstream(out / (case_name + "_eoc.csv")) << table.str();
    return 0;
}

int do_riemann_compare(const std::string& case_name, int n, int ref_n, int order,
                       const std::string& dir) {
    if (case_name != "rp1" && case_name != "rp2")
        throw CLI::ValidationError("riemann-compare supports rp1 or rp2");
    const fs::path out = resolve_output_dir(dir);

    CaseSpec spec = make_case(case_name, n);
    RunParams rp;
    rp.t_final = spec.t_final;
    rp.order = order;
    rp.cfl_nu = order >= 2 ? spec.nu_order2 : spec.nu_order1;
    const ReferenceState rs = ReferenceState::from_field(spec.initial, spec.eos);
    Field imex_final = run(spec.initial, spec.eos, rs, ButcherPair::for_order(order), rp,
                           spec.sampler);
    write_field_csv(imex_final, spec.eos,
                    (out / (case_name + "_imex_o" + std::to_string(order) + ".csv")).string());

    CaseSpec ref_spec = make_case(case_name, ref_n);
    ReferenceRunParams rrp;
    rrp.t_final = ref_spec.t_final;
    Field ref_final = reference_run(ref_spec.initial, ref_spec.eos, rrp, ref_spec.sampler);
    write_field_csv(ref_final, ref_spec.eos, (out / (case_name + "_reference.csv")).string());

    // project the reference onto the coarse grid and report L1 distances
    if (ref_n % n == 0) {
        const int k = ref_n / n;
        Field proj(spec.grid);
        for (int i = 0; i < n; ++i) {
            Vec8 acc = Vec8::Zero();
            for (int s = 0; s < k; ++s) acc += state_to_vec(ref_final.get(i * k + s, 0));
            proj.set(i, 0, vec_to_state(acc / k));
        }
        const VariableErrors d = l1_error(imex_final, proj, spec.eos);
        std::cout << "L1 distance to reference: rho1 " << d.rho1 << ", rho2 " << d.rho2
                  << ", v1x " << d.v1x << ", T " << d.T << "\n";
    }
    std::cout << "outputs in " << out.string() << "\n";
    return 0;
}

int do_vortex_profile(const std::string& regime, double r_max, double dr,
                      const std::string& dir) {
    const fs::path out = resolve_output_dir(dir);
    const VortexRegime vr =
        regime == "weak" ? VortexRegime::WeaklyCompressible : VortexRegime::Compressible;
    MixtureEOS eos = vortex_eos(vr);
    VortexParams params;
    VortexProfile prof = build_profile(params, eos, r_max, dr);
    const std::string path = (out / ("vortex_profile_" + regime + ".csv")).string();
    write_profile_csv(prof, path);
    std::cout << "wrote " << path << " (" << prof.r.size() << " samples)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume solver for the two-fluid single-temperature model"};
    app.require_subcommand(1);

    // run
    auto* cmd_run = app.add_subcommand("run", "advance a case and write snapshots");
    std::string config_path, case_name = "rp1", out_dir = "out";
    int n = 128, order = 2;
    double nu = -1, t_final = -1, cadence = 0;
    bool vtk = false;
    std::vector<std::string> kv;
    cmd_run->add_option("--config", config_path, "configuration file (overrides other flags)");
    cmd_run->add_option("--case", case_name, "case name");
    cmd_run->add_option("--n", n, "cells per axis");
    cmd_run->add_option("--order", order, "1 or 2");
    cmd_run->add_option("--nu", nu, "material CFL number");
    cmd_run->add_option("--t-final", t_final, "final time (case default if omitted)");
    cmd_run->add_option("--cadence", cadence, "output interval");
    cmd_run->add_option("--out", out_dir, "output directory");
    cmd_run->add_flag("--vtk", vtk, "also write VTK snapshots");
    cmd_run->add_option("--param", kv, "case parameter key=value (repeatable)");

    // convergence
    auto* cmd_conv = app.add_subcommand("convergence", "EOC study against the exact vortex");
    std::string conv_case = "vortex-compressible", conv_dir = "out";
    std::vector<int> resolutions{16, 32, 64, 128};
    int conv_order = 2;
    double conv_nu = -1, conv_tf = -1;
    cmd_conv->add_option("--case", conv_case, "vortex-compressible or vortex-weak");
    cmd_conv->add_option("--resolutions", resolutions, "cell counts, doubling");
    cmd_conv->add_option("--order", conv_order, "1 or 2");
    cmd_conv->add_option("--nu", conv_nu, "material CFL number");
    cmd_conv->add_option("--t-final", conv_tf, "final time");
    cmd_conv->add_option("--out", conv_dir, "output directory");

    // riemann-compare
    auto* cmd_rc = app.add_subcommand("riemann-compare",
                                      "run a Riemann problem with both solvers");
    std::string rc_case = "rp1", rc_dir = "out";
    int rc_n = 2000, rc_refn = 10000, rc_order = 2;
    cmd_rc->add_option("--case", rc_case, "rp1 or rp2");
    cmd_rc->add_option("--n", rc_n, "RS-IMEX cells");
    cmd_rc->add_option("--ref-n", rc_refn, "reference cells");
    cmd_rc->add_option("--order", rc_order, "RS-IMEX order");
    cmd_rc->add_option("--out", rc_dir, "output directory");

    // vortex-profile
    auto* cmd_vp = app.add_subcommand("vortex-profile", "dump the radial vortex profile");
    std::string vp_regime = "compressible", vp_dir = "out";
    double vp_rmax = 2.0, vp_dr = 1e-4;
    cmd_vp->add_option("--regime", vp_regime, "compressible or weak");
    cmd_vp->add_option("--r-max", vp_rmax, "table extent");
    cmd_vp->add_option("--dr", vp_dr, "table step");
    cmd_vp->add_option("--out", vp_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            ConfigFile cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot open config " + config_path);
                std::stringstream ss;
                ss << in.rdbuf();
                cfg = ConfigFile::parse(ss.str());
            } else {
                cfg.case_name = case_name;
                cfg.n = n;
                cfg.order = order;
                cfg.cfl_nu = nu;
                cfg.t_final = t_final;
                cfg.cadence = cadence;
                cfg.output_dir = out_dir;
                cfg.write_vtk = vtk;
                cfg.case_params = parse_kv(kv);
            }
            return do_run(cfg);
        }
        if (cmd_conv->parsed())
            return do_convergence(conv_case, resolutions, conv_order, conv_nu, conv_tf, conv_dir);
        if (cmd_rc->parsed()) return do_riemann_compare(rc_case, rc_n, rc_refn, rc_order, rc_dir);
        if (cmd_vp->parsed()) return do_vortex_profile(vp_regime, vp_rmax, vp_dr, vp_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
