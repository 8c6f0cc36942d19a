#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wqed {

using cplx = std::complex<double>;

enum class errc {
    degenerate_denominator,
    invalid_hopping,
    invalid_frequency,
    step_too_large,
    zero_transmission,
    pole_at_band_edge,
    no_gap_found,
    grid_too_coarse,
    degenerate_fit,
    singular_system,
    parse_error,
    validation_error,
    io_error,
    invalid_argument,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

// Three-level lambda emitter. Level |2> is the excited state reached from the
// ground state |1>, level |3> is the metastable state driven by the pump with
// Rabi frequency omega_rabi and detuning delta. All quantities are expressed
// in units of omega2 (canonically omega2 = 1).
struct EmitterConfig {
    double omega2 = 1.0;
    double delta = 0.0;
    double gamma2 = 0.0;
    double gamma3 = 0.0;
    double omega_rabi = 0.0;

    double omega3() const { return omega2 - delta; }

    // complex poles; derived on demand so they can never go stale
    cplx pole2() const { return {omega2, -0.5 * gamma2}; }
    cplx pole3() const { return {omega3(), -0.5 * gamma3}; }

    void validate() const;
};

// Directional emitter-waveguide rates. The stored quantity is the rate
// Gamma_d = 2 V_d^2 / v_g; the amplitude form is converted exactly at
// construction.
struct CouplingConfig {
    double gamma_l = 0.0;
    double gamma_r = 0.0;
    double v_g = 1.0;

    static CouplingConfig from_amplitudes(double v_l, double v_r, double v_g);

    bool symmetric() const { return gamma_l == gamma_r; }
    double amplitude_l() const;  // V_L = sqrt(Gamma_L v_g / 2), positive root
    double amplitude_r() const;

    void validate() const;
};

// Tagged choice of waveguide dispersion: linear (constant group velocity) or
// cosine tight-binding dispersion truncated at quadratic order, characterised
// by the photon hopping rate J. The band-centre offset of the cosine model is
// identically zero and is not a parameter.
class DispersionModel {
public:
    enum class Kind { linear, nonlinear };

    static DispersionModel linear(double v_g = 1.0);
    static DispersionModel nonlinear(double hopping);

    Kind kind() const { return kind_; }
    bool is_linear() const { return kind_ == Kind::linear; }

    double v_g() const;      // linear only
    double hopping() const;  // nonlinear only

    bool operator==(const DispersionModel&) const = default;

private:
    DispersionModel(Kind kind, double value) : kind_(kind), value_(value) {}
    Kind kind_;
    double value_;
};

// Complex scattering amplitudes. Probabilities are recomputed from the
// amplitudes and cannot be set independently.
struct ScatteringResult {
    cplx t;
    cplx r;

    double T() const { return std::norm(t); }
    double R() const { return std::norm(r); }
};

// Parameter bundle for a single emitter coupled to one waveguide model.
struct Model {
    EmitterConfig emitter;
    CouplingConfig coupling;
    DispersionModel dispersion = DispersionModel::linear();
};

}  // namespace wqed
