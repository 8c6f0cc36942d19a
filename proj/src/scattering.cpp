#include "wqed/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

const char* errc_name(errc code) {
    switch (code) {
    case errc::degenerate_denominator: return "DegenerateDenominator";
    case errc::invalid_hopping: return "InvalidHopping";
    case errc::invalid_frequency: return "InvalidFrequency";
    case errc::step_too_large: return "StepTooLarge";
    case errc::zero_transmission: return "ZeroTransmission";
    case errc::pole_at_band_edge: return "PoleAtBandEdge";
    case errc::no_gap_found: return "NoGapFound";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::degenerate_fit: return "DegenerateFit";
    case errc::singular_system: return "SingularSystem";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::io_error: return "IoError";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

void EmitterConfig::validate() const {
    if (!(omega2 > 0.0))
        throw Error(errc::validation_error, "emitter.omega2 must be > 0");
    if (gamma2 < 0.0 || gamma3 < 0.0)
        throw Error(errc::validation_error, "emitter decay rates must be >= 0");
    if (omega_rabi < 0.0)
        throw Error(errc::validation_error, "emitter.omega_rabi must be >= 0");
    if (!std::isfinite(delta))
        throw Error(errc::validation_error, "emitter.delta must be finite");
}

CouplingConfig CouplingConfig::from_amplitudes(double v_l, double v_r, double v_g) {
    if (!(v_g > 0.0))
        throw Error(errc::validation_error, "coupling.v_g must be > 0");
    CouplingConfig c;
    c.gamma_l = 2.0 * v_l * v_l / v_g;
    c.gamma_r = 2.0 * v_r * v_r / v_g;
    c.v_g = v_g;
    return c;
}

double CouplingConfig::amplitude_l() const { return std::sqrt(gamma_l * v_g / 2.0); }
double CouplingConfig::amplitude_r() const { return std::sqrt(gamma_r * v_g / 2.0); }

void CouplingConfig::validate() const {
    if (gamma_l < 0.0 || gamma_r < 0.0)
        throw Error(errc::validation_error, "coupling rates must be >= 0");
    if (!(v_g > 0.0))
        throw Error(errc::validation_error, "coupling.v_g must be > 0");
}

DispersionModel DispersionModel::linear(double v_g) {
    if (!(v_g > 0.0))
        throw Error(errc::validation_error, "dispersion.v_g must be > 0");
    return {Kind::linear, v_g};
}

DispersionModel DispersionModel::nonlinear(double hopping) {
    if (!(hopping > 0.0))
        throw Error(errc::invalid_hopping, "hopping rate J must be > 0");
    return {Kind::nonlinear, hopping};
}

double DispersionModel::v_g() const {
    if (kind_ != Kind::linear)
        throw Error(errc::invalid_argument, "v_g is defined for the linear model only");
    return value_;
}

double DispersionModel::hopping() const {
    if (kind_ != Kind::nonlinear)
        throw Error(errc::invalid_argument, "hopping is defined for the nonlinear model only");
    return value_;
}

std::pair<cplx, cplx> complex_detunings(double omega, const EmitterConfig& emitter) {
    return {cplx(omega, 0.0) - emitter.pole2(), cplx(omega, 0.0) - emitter.pole3()};
}

namespace {

constexpr double kDenominatorFloor = 1e-30;

ScatteringResult from_parts(cplx numerator_t, cplx numerator_r, cplx denominator) {
    if (std::abs(denominator) < kDenominatorFloor)
        throw Error(errc::degenerate_denominator,
                    "scattering denominator vanished at a pathological parameter point");
    return {numerator_t / denominator, numerator_r / denominator};
}

}  // namespace

ScatteringResult amplitudes_linear(double omega, const EmitterConfig& emitter,
                                   const CouplingConfig& coupling) {
    const auto [d2, d3] = complex_detunings(omega, emitter);
    const double omega_rabi_sq4 = emitter.omega_rabi * emitter.omega_rabi / 4.0;
    const cplx i(0.0, 1.0);

    const cplx num_t = d3 * (d2 + i * (coupling.gamma_l - coupling.gamma_r) / 4.0) - omega_rabi_sq4;
    const cplx den = d3 * (d2 + i * (coupling.gamma_l + coupling.gamma_r) / 4.0) - omega_rabi_sq4;
    const cplx num_r = -i * std::sqrt(coupling.gamma_r * coupling.gamma_l) / 2.0 * d3;
    return from_parts(num_t, num_r, den);
}

ScatteringResult amplitudes_nonlinear(double omega, const EmitterConfig& emitter,
                                      const CouplingConfig& coupling, double j) {
    if (!(j > 0.0))
        throw Error(errc::invalid_hopping, "hopping rate J must be > 0");
    if (!(omega > 0.0))
        throw Error(errc::invalid_frequency,
                    "the cosine-dispersion closed form requires omega > 0");

    const auto [d2, d3] = complex_detunings(omega, emitter);
    const double omega_rabi_sq4 = omega * emitter.omega_rabi * emitter.omega_rabi / 4.0;
    const cplx i(0.0, 1.0);

    const cplx num_t =
        d3 * (omega * d2 + i * (coupling.gamma_l - coupling.gamma_r) / (4.0 * j)) - omega_rabi_sq4;
    const cplx den =
        d3 * (omega * d2 + i * (coupling.gamma_l + coupling.gamma_r) / (4.0 * j)) - omega_rabi_sq4;
    const cplx num_r = -2.0 * i * std::sqrt(coupling.gamma_r * coupling.gamma_l) * d3 / (4.0 * j);
    return from_parts(num_t, num_r, den);
}

ScatteringResult amplitudes(double omega, const Model& model) {
    if (model.dispersion.is_linear())
        return amplitudes_linear(omega, model.emitter, model.coupling);
    return amplitudes_nonlinear(omega, model.emitter, model.coupling, model.dispersion.hopping());
}

double transmission(double omega, const Model& model) { return amplitudes(omega, model).T(); }

double transmission_derivative(double omega, const Model& model, double h) {
    if (!(h > 0.0))
        throw Error(errc::invalid_argument, "derivative step must be > 0");

    const auto central = [&](double step) {
        return (transmission(omega + step, model) - transmission(omega - step, model)) /
               (2.0 * step);
    };
    const double d_h = central(h);
    const double d_h2 = central(h / 2.0);

    const double disagreement = std::abs(d_h2 - d_h);
    const double scale = std::max(std::abs(d_h), std::abs(d_h2));
    if (disagreement > 1e-6 && disagreement > 1e-2 * scale)
        throw Error(errc::step_too_large, "difference estimates disagree; reduce the step");

    return (4.0 * d_h2 - d_h) / 3.0;
}

namespace {

struct DerivativeSampler {
    const Model& model;
    double h;
    double operator()(double omega) const { return transmission_derivative(omega, model, h); }
};

// Roots of the derivative inside (lo, hi), assuming d(lo) and d(hi) carry the
// given signs. Cells with multiple sign changes are split recursively.
void refine_extrema(const DerivativeSampler& deriv, double lo, double hi, int sign_lo,
                    int sign_hi, double tol, int depth, std::vector<std::pair<double, int>>& out) {
    if (sign_lo == sign_hi)
        return;
    if (hi - lo <= tol || depth <= 0) {
        // sign_lo > 0 falling to < 0 is a maximum
        out.emplace_back(0.5 * (lo + hi), sign_lo);
        return;
    }
    const double mid = 0.5 * (lo + hi);
    const double dm = deriv(mid);
    const int sign_mid = (dm > 0.0) - (dm < 0.0);
    if (sign_mid == 0) {
        out.emplace_back(mid, sign_lo);
        return;
    }
    refine_extrema(deriv, lo, mid, sign_lo, sign_mid, tol, depth - 1, out);
    refine_extrema(deriv, mid, hi, sign_mid, sign_hi, tol, depth - 1, out);
}

}  // namespace

std::vector<SpectralFeature> find_spectral_features(const Model& model, double omega_lo,
                                                    double omega_hi, int grid_n,
                                                    const FeatureOptions& options) {
    if (!(omega_lo < omega_hi))
        throw Error(errc::validation_error, "feature window requires omega_lo < omega_hi");
    if (grid_n < 100)
        throw Error(errc::validation_error, "feature grid requires at least 100 points");

    const double omega2 = model.emitter.omega2;
    const double slope_threshold = options.plateau_slope_threshold / omega2;
    const double min_width = options.plateau_min_width * omega2;
    const double tol = options.refine_tol * omega2;
    const DerivativeSampler deriv{model, options.derivative_step * omega2};

    std::vector<double> grid(grid_n), t_vals(grid_n), d_vals(grid_n);
    const double step = (omega_hi - omega_lo) / (grid_n - 1);
    for (int i = 0; i < grid_n; ++i) {
        grid[i] = omega_lo + i * step;
        t_vals[i] = transmission(grid[i], model);
        d_vals[i] = deriv(grid[i]);
    }

    std::vector<SpectralFeature> features;

    // peaks and dips: derivative sign changes, refined by bisection
    std::vector<std::pair<double, int>> extrema;
    for (int i = 0; i + 1 < grid_n; ++i) {
        const int s0 = (d_vals[i] > 0.0) - (d_vals[i] < 0.0);
        const int s1 = (d_vals[i + 1] > 0.0) - (d_vals[i + 1] < 0.0);
        if (s0 == 0) {
            // an exact zero on the grid is itself an extremum; classify from
            // the neighbouring samples
            const int left = (i > 0) ? ((d_vals[i - 1] > 0.0) - (d_vals[i - 1] < 0.0)) : -s1;
            if (left != 0 && left != s1)
                extrema.emplace_back(grid[i], left);
            continue;
        }
        if (s1 == 0 || s0 == s1)
            continue;
        refine_extrema(deriv, grid[i], grid[i + 1], s0, s1, tol, options.tie_depth, extrema);
    }
    for (const auto& [omega, sign_before] : extrema) {
        const double t = transmission(omega, model);
        features.push_back({sign_before > 0 ? FeatureKind::peak : FeatureKind::dip, omega, t,
                            omega, omega});
    }

    // plateaus: maximal runs of low slope and non-negligible transmission
    int i = 0;
    while (i < grid_n) {
        const bool flat = std::abs(d_vals[i]) < slope_threshold &&
                          t_vals[i] > options.plateau_min_transmission;
        if (!flat) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < grid_n && std::abs(d_vals[j + 1]) < slope_threshold &&
               t_vals[j + 1] > options.plateau_min_transmission)
            ++j;
        if (grid[j] - grid[i] >= min_width) {
            const double centre = 0.5 * (grid[i] + grid[j]);
            features.push_back({FeatureKind::plateau, centre, transmission(centre, model),
                                grid[i], grid[j]});
        }
        i = j + 1;
    }

    std::sort(features.begin(), features.end(),
              [](const SpectralFeature& a, const SpectralFeature& b) { return a.omega < b.omega; });
    return features;
}

}  // namespace wqed
