#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wqed/transfer.hpp"
#include "wqed/types.hpp"

namespace wqed {

struct SweepConfig {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int n_points = 0;
    bool derivative = false;

    bool operator==(const SweepConfig&) const = default;
};

enum class OutputFormat { csv, json };

struct OutputConfig {
    OutputFormat format = OutputFormat::csv;
    std::string path;  // empty means stdout

    bool operator==(const OutputConfig&) const = default;
};

// Chain geometry as written in config files: spacing in units of lambda0.
struct LatticeSpec {
    int n_emitters = 1;
    double spacing_lambda0 = 0.5;
    PhaseMode phase_mode = PhaseMode::frequency_dependent;

    LatticeConfig to_lattice(const EmitterConfig& emitter, const CouplingConfig& coupling) const;

    bool operator==(const LatticeSpec&) const = default;
};

struct BandsSpec {
    std::vector<double> spacings_lambda0;
    PhaseMode phase_mode = PhaseMode::frequency_dependent;

    bool operator==(const BandsSpec&) const = default;
};

struct GapFitSpec {
    double spacing_lambda0 = 0.045;
    double j_min = 1.2;
    double j_max = 5.0;
    int j_points = 20;
    PhaseMode phase_mode = PhaseMode::frequency_dependent;

    bool operator==(const GapFitSpec&) const = default;
};

struct RunConfig {
    std::string name;
    EmitterConfig emitter;
    CouplingConfig coupling;
    DispersionModel dispersion = DispersionModel::linear();
    std::optional<LatticeSpec> lattice;
    std::optional<BandsSpec> bands;
    std::optional<GapFitSpec> gapfit;
    SweepConfig sweep;
    OutputConfig output;

    Model model() const { return {emitter, coupling, dispersion}; }
    void validate() const;

    bool operator==(const RunConfig&) const;
};

// Parses and validates a config document. All frequency-like fields are
// interpreted in units of emitter.omega2 unless the document carries
// "frequency_units": "absolute". Unknown keys are rejected with a field-path
// diagnostic; malformed JSON raises parse_error, out-of-range values raise
// validation_error.
RunConfig parse_config(const std::string& text);

// Serialises a RunConfig to its JSON document form (absolute units).
// parse_config(config_to_json(c)) == c.
std::string config_to_json(const RunConfig& config);

std::vector<std::string> preset_names();
RunConfig make_preset(const std::string& name);
std::string preset_description(const std::string& name);

}  // namespace wqed
