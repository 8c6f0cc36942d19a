#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wqed/bands.hpp"
#include "wqed/config.hpp"

namespace wqed {

struct SpectrumRow {
    double omega = 0.0;
    double T = 0.0;
    double R = 0.0;
    std::optional<double> dT_domega;
};

struct SpectrumResult {
    std::vector<SpectrumRow> rows;           // ascending in omega
    std::vector<std::string> notices;        // path selection etc.
};

// Frequency sweep for a single emitter or a chain (when config.lattice is
// present). Lossless chains go through the Chebyshev closed form; lossy
// chains use the matrix-power route, with a notice either way.
SpectrumResult run_spectrum(const RunConfig& config);

struct BandRow {
    double spacing_lambda0 = 0.0;
    double omega = 0.0;
    double T = 0.0;   // single-emitter transmission at omega
    double R = 0.0;
    double cos_kl = 0.0;
    bool forbidden = false;
};

struct GapReport {
    double spacing_lambda0 = 0.0;
    std::vector<BandInterval> intervals;          // config's dispersion model
    bool gap_found = false;
    double gap_lo = 0.0, gap_hi = 0.0;            // gap above resonance, config model
    // linear reference, filled when the config model is nonlinear
    bool linear_reference = false;
    double linear_gap_lo = 0.0, linear_gap_hi = 0.0;
    double width_ratio = 0.0;                     // nonlinear width / linear width
    double delta_omega_b = 0.0;                   // linear_gap_hi - gap_hi
};

struct BandsResult {
    std::vector<BandRow> rows;
    std::vector<GapReport> reports;               // one per spacing
    std::vector<std::string> notices;
};

// Bloch-band scan over the sweep window for every requested spacing.
BandsResult run_bands(const RunConfig& config);

struct GapFitReport {
    GapFit fit;
    double linear_gap_end = 0.0;
    bool crossing_found = false;
    double crossing_j = 0.0;
    std::vector<std::string> notices;
};

// Gap-difference samples over the configured J grid, the log-law fit, and
// the located sign change of delta_omega_B.
GapFitReport run_gapfit(const RunConfig& config);

// Evaluates fn(i) for i in [0, n) on up to WQED_THREADS worker threads
// (default: hardware concurrency). Results must be written to preallocated
// slots so the output order is deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace wqed
