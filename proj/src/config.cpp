#include "wqed/config.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace wqed {

using nlohmann::json;

LatticeConfig LatticeSpec::to_lattice(const EmitterConfig& emitter,
                                      const CouplingConfig& coupling) const {
    return LatticeConfig::from_lambda0(n_emitters, spacing_lambda0, phase_mode, emitter.omega2,
                                       coupling.v_g);
}

bool RunConfig::operator==(const RunConfig& o) const {
    return name == o.name && emitter.omega2 == o.emitter.omega2 &&
           emitter.delta == o.emitter.delta && emitter.gamma2 == o.emitter.gamma2 &&
           emitter.gamma3 == o.emitter.gamma3 && emitter.omega_rabi == o.emitter.omega_rabi &&
           coupling.gamma_l == o.coupling.gamma_l && coupling.gamma_r == o.coupling.gamma_r &&
           coupling.v_g == o.coupling.v_g && dispersion == o.dispersion &&
           lattice == o.lattice && bands == o.bands && gapfit == o.gapfit && sweep == o.sweep &&
           output == o.output;
}

void RunConfig::validate() const {
    emitter.validate();
    coupling.validate();
    if (!(sweep.omega_min < sweep.omega_max))
        throw Error(errc::validation_error, "sweep: omega_min must be < omega_max");
    if (sweep.n_points < 2)
        throw Error(errc::validation_error, "sweep.n_points must be >= 2");
    if (!dispersion.is_linear() && sweep.omega_min <= 0.0)
        throw Error(errc::validation_error,
                    "sweep.omega_min must be > 0 for the nonlinear dispersion model");
    if (lattice) {
        if (lattice->n_emitters < 1)
            throw Error(errc::validation_error, "lattice.n_emitters must be >= 1");
        if (!(lattice->spacing_lambda0 > 0.0))
            throw Error(errc::validation_error, "lattice.spacing_lambda0 must be > 0");
    }
    if (bands) {
        if (bands->spacings_lambda0.empty())
            throw Error(errc::validation_error, "bands.spacings_lambda0 must not be empty");
        for (double s : bands->spacings_lambda0)
            if (!(s > 0.0))
                throw Error(errc::validation_error, "bands.spacings_lambda0 entries must be > 0");
        if (emitter.gamma2 != 0.0 || emitter.gamma3 != 0.0 || !coupling.symmetric())
            throw Error(errc::validation_error,
                        "bands runs require lossless symmetric parameters");
    }
    if (gapfit) {
        if (!(gapfit->spacing_lambda0 > 0.0))
            throw Error(errc::validation_error, "gapfit.spacing_lambda0 must be > 0");
        if (!(gapfit->j_min > 0.0) || !(gapfit->j_min < gapfit->j_max))
            throw Error(errc::validation_error, "gapfit requires 0 < j_min < j_max");
        if (gapfit->j_points < 2)
            throw Error(errc::validation_error, "gapfit.j_points must be >= 2");
        if (emitter.gamma2 != 0.0 || emitter.gamma3 != 0.0 || !coupling.symmetric())
            throw Error(errc::validation_error,
                        "gapfit runs require lossless symmetric parameters");
        if (dispersion.is_linear())
            throw Error(errc::validation_error,
                        "gapfit requires a nonlinear dispersion entry; the J grid supplies "
                        "the hopping rates");
    }
}

namespace {

// checked JSON access with field-path diagnostics
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object())
            throw Error(errc::parse_error, path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    Reader object(const std::string& key) {
        mark(key);
        return Reader(at(key), path_ + key + ".");
    }

    double number(const std::string& key) {
        mark(key);
        const json& v = at(key);
        if (!v.is_number())
            throw Error(errc::parse_error, path_ + key + ": expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x))
            throw Error(errc::validation_error, path_ + key + ": must be finite");
        return x;
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key) {
        mark(key);
        const json& v = at(key);
        if (!v.is_number_integer())
            throw Error(errc::parse_error, path_ + key + ": expected an integer");
        return v.get<int>();
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key))
            return fallback;
        mark(key);
        const json& v = at(key);
        if (!v.is_boolean())
            throw Error(errc::parse_error, path_ + key + ": expected a boolean");
        return v.get<bool>();
    }

    std::string string(const std::string& key) {
        mark(key);
        const json& v = at(key);
        if (!v.is_string())
            throw Error(errc::parse_error, path_ + key + ": expected a string");
        return v.get<std::string>();
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        return has(key) ? string(key) : fallback;
    }

    std::vector<double> number_array(const std::string& key) {
        mark(key);
        const json& v = at(key);
        if (!v.is_array())
            throw Error(errc::parse_error, path_ + key + ": expected an array of numbers");
        std::vector<double> out;
        for (const auto& item : v) {
            if (!item.is_number())
                throw Error(errc::parse_error, path_ + key + ": expected an array of numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    // rejects keys that were never consumed
    void finish() const {
        for (const auto& [key, value] : node_.items())
            if (!seen_.count(key))
                throw Error(errc::parse_error, "unknown key '" + path_ + key + "'");
    }

private:
    const json& at(const std::string& key) {
        if (!node_.contains(key))
            throw Error(errc::parse_error, "missing key '" + path_ + key + "'");
        return node_.at(key);
    }
    void mark(const std::string& key) { seen_.insert(key); }

    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

PhaseMode parse_phase_mode(const std::string& text, const std::string& path) {
    if (text == "frequency_dependent" || text == "freq")
        return PhaseMode::frequency_dependent;
    if (text == "resonant")
        return PhaseMode::resonant;
    throw Error(errc::validation_error,
                path + ": expected 'frequency_dependent' or 'resonant'");
}

const char* phase_mode_name(PhaseMode mode) {
    return mode == PhaseMode::resonant ? "resonant" : "frequency_dependent";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(errc::parse_error, e.what());
    }

    Reader root(document, "");
    RunConfig config;
    config.name = root.string_or("name", "");

    const std::string units = root.string_or("frequency_units", "omega2");
    if (units != "omega2" && units != "absolute")
        throw Error(errc::validation_error, "frequency_units: expected 'omega2' or 'absolute'");

    Reader em = root.object("emitter");
    config.emitter.omega2 = em.number_or("omega2", 1.0);
    const double scale = units == "omega2" ? config.emitter.omega2 : 1.0;
    config.emitter.delta = em.number_or("delta", 0.0) * scale;
    config.emitter.gamma2 = em.number_or("gamma2", 0.0) * scale;
    config.emitter.gamma3 = em.number_or("gamma3", 0.0) * scale;
    config.emitter.omega_rabi = em.number_or("omega_rabi", 0.0) * scale;
    em.finish();

    Reader cp = root.object("coupling");
    if (cp.has("v_l") || cp.has("v_r")) {
        const double v_g = cp.number_or("v_g", 1.0);
        config.coupling =
            CouplingConfig::from_amplitudes(cp.number("v_l"), cp.number("v_r"), v_g);
    } else {
        config.coupling.gamma_l = cp.number("gamma_l") * scale;
        config.coupling.gamma_r = cp.number("gamma_r") * scale;
        config.coupling.v_g = cp.number_or("v_g", 1.0);
    }
    cp.finish();

    Reader disp = root.object("dispersion");
    const std::string kind = disp.string("type");
    if (kind == "linear") {
        config.dispersion = DispersionModel::linear(disp.number_or("v_g", config.coupling.v_g));
    } else if (kind == "nonlinear") {
        const double j = disp.number("j") * scale;
        if (!(j > 0.0))
            throw Error(errc::validation_error, "dispersion.j must be > 0");
        config.dispersion = DispersionModel::nonlinear(j);
    } else {
        throw Error(errc::validation_error, "dispersion.type: expected 'linear' or 'nonlinear'");
    }
    disp.finish();

    if (root.has("lattice")) {
        Reader lat = root.object("lattice");
        LatticeSpec spec;
        spec.n_emitters = lat.integer("n_emitters");
        spec.spacing_lambda0 = lat.number("spacing_lambda0");
        spec.phase_mode = parse_phase_mode(lat.string_or("phase_mode", "frequency_dependent"),
                                           "lattice.phase_mode");
        lat.finish();
        config.lattice = spec;
    }

    if (root.has("bands")) {
        Reader bands = root.object("bands");
        BandsSpec spec;
        spec.spacings_lambda0 = bands.number_array("spacings_lambda0");
        spec.phase_mode = parse_phase_mode(bands.string_or("phase_mode", "frequency_dependent"),
                                           "bands.phase_mode");
        bands.finish();
        config.bands = spec;
    }

    if (root.has("gapfit")) {
        Reader gap = root.object("gapfit");
        GapFitSpec spec;
        spec.spacing_lambda0 = gap.number("spacing_lambda0");
        spec.j_min = gap.number("j_min") * scale;
        spec.j_max = gap.number("j_max") * scale;
        spec.j_points = gap.integer("j_points");
        spec.phase_mode = parse_phase_mode(gap.string_or("phase_mode", "frequency_dependent"),
                                           "gapfit.phase_mode");
        gap.finish();
        config.gapfit = spec;
    }

    Reader sweep = root.object("sweep");
    config.sweep.omega_min = sweep.number("omega_min") * scale;
    config.sweep.omega_max = sweep.number("omega_max") * scale;
    config.sweep.n_points = sweep.integer("n_points");
    config.sweep.derivative = sweep.boolean_or("derivative", false);
    sweep.finish();

    if (root.has("output")) {
        Reader out = root.object("output");
        const std::string format = out.string_or("format", "csv");
        if (format == "csv")
            config.output.format = OutputFormat::csv;
        else if (format == "json")
            config.output.format = OutputFormat::json;
        else
            throw Error(errc::validation_error, "output.format: expected 'csv' or 'json'");
        config.output.path = out.string_or("path", "");
        out.finish();
    }

    root.finish();
    config.validate();
    return config;
}

std::string config_to_json(const RunConfig& config) {
    json document;
    if (!config.name.empty())
        document["name"] = config.name;
    document["frequency_units"] = "absolute";
    document["emitter"] = {{"omega2", config.emitter.omega2},
                           {"delta", config.emitter.delta},
                           {"gamma2", config.emitter.gamma2},
                           {"gamma3", config.emitter.gamma3},
                           {"omega_rabi", config.emitter.omega_rabi}};
    document["coupling"] = {{"gamma_l", config.coupling.gamma_l},
                            {"gamma_r", config.coupling.gamma_r},
                            {"v_g", config.coupling.v_g}};
    if (config.dispersion.is_linear())
        document["dispersion"] = {{"type", "linear"}, {"v_g", config.dispersion.v_g()}};
    else
        document["dispersion"] = {{"type", "nonlinear"}, {"j", config.dispersion.hopping()}};
    if (config.lattice)
        document["lattice"] = {{"n_emitters", config.lattice->n_emitters},
                               {"spacing_lambda0", config.lattice->spacing_lambda0},
                               {"phase_mode", phase_mode_name(config.lattice->phase_mode)}};
    if (config.bands)
        document["bands"] = {{"spacings_lambda0", config.bands->spacings_lambda0},
                             {"phase_mode", phase_mode_name(config.bands->phase_mode)}};
    if (config.gapfit)
        document["gapfit"] = {{"spacing_lambda0", config.gapfit->spacing_lambda0},
                              {"j_min", config.gapfit->j_min},
                              {"j_max", config.gapfit->j_max},
                              {"j_points", config.gapfit->j_points},
                              {"phase_mode", phase_mode_name(config.gapfit->phase_mode)}};
    document["sweep"] = {{"omega_min", config.sweep.omega_min},
                         {"omega_max", config.sweep.omega_max},
                         {"n_points", config.sweep.n_points},
                         {"derivative", config.sweep.derivative}};
    document["output"] = {{"format", config.output.format == OutputFormat::csv ? "csv" : "json"},
                          {"path", config.output.path}};
    return document.dump(2) + "\n";
}

namespace {

// common parameters of all presets: Omega = 0.2, gamma2 = 0.1, gamma3 = 0,
// delta = 0, in units of omega2
RunConfig base_preset(const std::string& name, double gamma_d, bool lossless = false) {
    RunConfig config;
    config.name = name;
    config.emitter = {1.0, 0.0, lossless ? 0.0 : 0.1, 0.0, 0.2};
    config.coupling = {gamma_d, gamma_d, 1.0};
    config.sweep = {0.5, 1.5, 2001, false};
    return config;
}

struct PresetEntry {
    const char* name;
    const char* description;
    RunConfig (*build)();
};

const PresetEntry kPresets[] = {
    {"fig2a-oc", "single emitter, linear dispersion, over-coupled (Gamma = 4 gamma2)",
     [] {
         return base_preset("fig2a-oc", 0.4);
     }},
    {"fig2a-cr", "single emitter, linear dispersion, critically coupled (Gamma = gamma2)",
     [] {
         return base_preset("fig2a-cr", 0.1);
     }},
    {"fig2a-uc", "single emitter, linear dispersion, under-coupled (Gamma = gamma2/2)",
     [] {
         return base_preset("fig2a-uc", 0.05);
     }},
    {"fig2b-J0.5", "single emitter, cosine dispersion J = 0.5, over-coupled",
     [] {
         RunConfig c = base_preset("fig2b-J0.5", 0.4);
         c.dispersion = DispersionModel::nonlinear(0.5);
         c.sweep = {0.01, 1.5, 3001, false};
         return c;
     }},
    {"fig2b-J1.0", "single emitter, cosine dispersion J = 1.0, over-coupled",
     [] {
         RunConfig c = base_preset("fig2b-J1.0", 0.4);
         c.dispersion = DispersionModel::nonlinear(1.0);
         c.sweep = {0.01, 1.5, 3001, false};
         return c;
     }},
    {"fig2b-J2.5", "single emitter, cosine dispersion J = 2.5, over-coupled",
     [] {
         RunConfig c = base_preset("fig2b-J2.5", 0.4);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.sweep = {0.01, 1.5, 3001, false};
         return c;
     }},
    {"fig2c", "transmission derivative spectrum, cosine dispersion J = 2.5",
     [] {
         RunConfig c = base_preset("fig2c", 0.4);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.sweep = {0.01, 1.5, 3001, true};
         return c;
     }},
    {"fig3-N2", "chain of 2 emitters, L = 0.5 lambda0, cosine dispersion J = 2.5",
     [] {
         RunConfig c = base_preset("fig3-N2", 0.4);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.lattice = LatticeSpec{2, 0.5, PhaseMode::frequency_dependent};
         c.sweep = {0.5, 1.5, 3001, false};
         return c;
     }},
    {"fig3-N5", "chain of 5 emitters, L = 0.5 lambda0, cosine dispersion J = 2.5",
     [] {
         RunConfig c = base_preset("fig3-N5", 0.4);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.lattice = LatticeSpec{5, 0.5, PhaseMode::frequency_dependent};
         c.sweep = {0.5, 1.5, 3001, false};
         return c;
     }},
    {"fig3-N10", "chain of 10 emitters, L = 0.5 lambda0, cosine dispersion J = 2.5",
     [] {
         RunConfig c = base_preset("fig3-N10", 0.4);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.lattice = LatticeSpec{10, 0.5, PhaseMode::frequency_dependent};
         c.sweep = {0.5, 1.5, 3001, false};
         return c;
     }},
    {"fig4", "Bloch bands at spacings {0.045, 0.05} lambda0, lossless, J = 2.5",
     [] {
         RunConfig c = base_preset("fig4", 0.4, /*lossless=*/true);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.bands = BandsSpec{{0.045, 0.05}, PhaseMode::frequency_dependent};
         c.sweep = {0.5, 2.5, 40001, false};
         return c;
     }},
    {"fig4-inset", "gap-difference law fit over the default J grid, L = 0.045 lambda0",
     [] {
         RunConfig c = base_preset("fig4-inset", 0.4, /*lossless=*/true);
         c.dispersion = DispersionModel::nonlinear(2.5);
         c.gapfit = GapFitSpec{0.045, 1.2, 5.0, 20, PhaseMode::frequency_dependent};
         c.sweep = {0.5, 2.5, 101, false};
         return c;
     }},
};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& entry : kPresets)
        names.emplace_back(entry.name);
    return names;
}

RunConfig make_preset(const std::string& name) {
    for (const auto& entry : kPresets)
        if (name == entry.name) {
            RunConfig config = entry.build();
            config.validate();
            return config;
        }
    throw Error(errc::validation_error, "unknown preset '" + name + "'");
}

std::string preset_description(const std::string& name) {
    for (const auto& entry : kPresets)
        if (name == entry.name)
            return entry.description;
    throw Error(errc::validation_error, "unknown preset '" + name + "'");
}

}  // namespace wqed
