#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twofluid/grid.hpp"

namespace twofluid {

// Quantitative post-processing: L1 errors, EOC, conservation, divergence,
// Mach extrema and the entropy budget.

struct VariableErrors {
    double alpha1 = 0, rho1 = 0, rho2 = 0;
    double v1x = 0, v2x = 0, v1y = 0, v2y = 0;
    double T = 0;
    double max() const {
        return std::max({alpha1, rho1, rho2, v1x, v2x, v1y, v2y, T});
    }
};

// Unnormalized L1 distance sum |q - ref| |cell| per variable against a field
// on the same grid.
VariableErrors l1_error(const Field& f, const Field& ref, const MixtureEOS& eos);

// ... or against a pointwise-sampleable exact solution.
VariableErrors l1_error(const Field& f, const BoundarySampler& exact, const MixtureEOS& eos);

// EOC_k = log2(e_k / e_{k+1}) for resolutions doubling.
std::vector<double> eoc(const std::vector<double>& errors);

struct DivergenceReport {
    double max_abs = 0;
    double l1 = 0;  // sum |div v| |cell|
};

// Centered-difference divergence of the mixture velocity (matches the
// solver's centered operators); ghosts must be filled.
DivergenceReport discrete_divergence(const Field& f);

struct EntropyReport {
    double total_rhoS = 0;
    double min_Pi = 0, max_Pi = 0;
};

// Mixture entropy total and the entropy production bounds; infinite
// relaxation times contribute nothing.
EntropyReport entropy_report(const Field& f, const MixtureEOS& eos);

double entropy_production(const State& q, const MixtureEOS& eos);

struct MachExtrema {
    double M1 = 0, M2 = 0, M_mix = 0;
};
MachExtrema mach_extrema(const Field& f, const MixtureEOS& eos);

// One diagnostics record per output time.
struct FieldReport {
    double t = 0;
    double dt = 0;
    ConservationTotals totals;
    DivergenceReport divergence;
    MachExtrema mach;
    EntropyReport entropy;
    int linear_iterations = 0;
    std::optional<VariableErrors> errors;

    static std::string csv_header();
    std::string csv_row() const;
};

FieldReport field_report(const Field& f, const MixtureEOS& eos, double t, double dt,
                         int linear_iterations = 0);

}  // namespace twofluid
