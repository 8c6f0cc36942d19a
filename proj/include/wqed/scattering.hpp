#pragma once

#include <utility>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

// Complex detunings of the photon from the two dressed emitter poles:
// d2 = omega - (omega2 - i gamma2/2), d3 = omega - (omega2 - delta - i gamma3/2).
std::pair<cplx, cplx> complex_detunings(double omega, const EmitterConfig& emitter);

// Single-emitter scattering amplitudes for the linear-dispersion waveguide.
ScatteringResult amplitudes_linear(double omega, const EmitterConfig& emitter,
                                   const CouplingConfig& coupling);

// Single-emitter amplitudes for the cosine-dispersion waveguide with hopping
// rate j, in dimensionless units (omega2 = 1, v_g = 1). Requires omega > 0;
// the closed form degenerates at omega = 0.
ScatteringResult amplitudes_nonlinear(double omega, const EmitterConfig& emitter,
                                      const CouplingConfig& coupling, double j);

// Dispatch on the dispersion model.
ScatteringResult amplitudes(double omega, const Model& model);

double transmission(double omega, const Model& model);

// dT/domega by central differences with one Richardson extrapolation step.
// Throws step_too_large when the two difference estimates disagree by more
// than 1% relative (above an absolute floor of 1e-6, below which the
// discrepancy is dominated by rounding rather than truncation).
double transmission_derivative(double omega, const Model& model, double h = 1e-5);

enum class FeatureKind { peak, dip, plateau };

struct SpectralFeature {
    FeatureKind kind;
    double omega;         // extremum position, or plateau centre
    double transmission;  // T at omega
    double omega_lo;      // interval edges; equal to omega for point features
    double omega_hi;
};

struct FeatureOptions {
    double plateau_slope_threshold = 0.05;  // |dT/domega| bound, units 1/omega2
    double plateau_min_width = 0.02;        // units of omega2
    double plateau_min_transmission = 0.1;
    double refine_tol = 1e-8;               // units of omega2
    double derivative_step = 1e-5;
    int tie_depth = 20;
};

// Locates peaks and dips from sign changes of the numeric derivative on the
// grid (refined by bisection), and plateaus as maximal low-slope intervals
// with T above the floor. Returns an empty list when the window is
// featureless; throws only on an invalid window.
std::vector<SpectralFeature> find_spectral_features(const Model& model, double omega_lo,
                                                    double omega_hi, int grid_n,
                                                    const FeatureOptions& options = {});

}  // namespace wqed
