#pragma once

#include <map>
#include <optional>
#include <string>

#include "twofluid/cases.hpp"
#include "twofluid/imex.hpp"

namespace twofluid {

// Run configuration file: INI-style sections [case], [grid], [time],
// [solver], [output], [physics]. Unknown sections or keys are rejected;
// physics overrides are validated when the case is assembled.
struct ConfigFile {
    std::string case_name = "rp1";
    std::map<std::string, std::string> case_params;  // free-form case knobs

    int n = 128;

    double t_final = -1;  // < 0: use the case default
    double cfl_nu = -1;   // < 0: case default for the chosen order
    int order = 2;

    SolverControls solver;

    std::string output_dir = "out";
    double cadence = 0;  // output interval; 0 = initial + final only
    bool write_csv = true;
    bool write_vtk = false;

    std::optional<double> gamma1, gamma2, cv1, cv2;
    std::optional<double> tau_alpha, tau_w, mach_ratio_C;

    static ConfigFile parse(const std::string& text);
    std::string serialize() const;
};

// The assembled problem: case with overrides applied plus the run controls.
struct RunSetup {
    CaseSpec spec;
    RunParams params;
};

RunSetup assemble_run(const ConfigFile& cfg);

}  // namespace twofluid
