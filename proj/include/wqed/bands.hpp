#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wqed/transfer.hpp"
#include "wqed/types.hpp"

namespace wqed {

struct BandPoint {
    double omega = 0.0;
    double cos_kl = 0.0;
    bool forbidden = false;              // |cos(KL)| > 1
    std::optional<double> k_real;        // Bloch vector in [0, pi/L], allowed bands only
    std::optional<double> kappa;         // decay constant acosh(|cos KL|)/L, gaps only
};

enum class BandKind { allowed, forbidden };

struct BandInterval {
    BandKind kind;
    double omega_lo;
    double omega_hi;
};

struct GapFit {
    double base_b = 0.0;       // > 1
    double xi = 0.0;           // offset, units of omega2
    double rms_residual = 0.0;
    std::vector<std::pair<double, double>> j_samples;  // (J, delta_omega_B), ascending in J
};

// cos(KL) of the infinite chain from the closed dispersion relations,
//   linear:    cos(qL) + sin(qL) * Gamma d3 / (2 Lambda^2)
//   nonlinear: cos(qL) + sin(qL) * Gamma d3 / (Lambda_bar^3 J)
// with Lambda^2 = d2 d3 - Omega^2/4 and Lambda_bar^3 = omega Lambda^2,
// d_j = omega - omega_j real. Requires lossless symmetric parameters.
// Throws pole_at_band_edge when evaluated at a polariton pole; callers must
// straddle poles, not evaluate them.
//
// Note: for the cosine-dispersion model this closed form and the trace route
// below differ by a factor 2 in the correction term; they are not identical
// functions. The closed form is primary for band and gap analysis. The
// validation suite measures the divergence rather than hiding it.
double bloch_cos_closed(double omega, const EmitterConfig& emitter,
                        const CouplingConfig& coupling, const DispersionModel& dispersion,
                        const LatticeConfig& lattice);

// cos(KL) = (1/2) tr(M_QE M_F) = Re[e^{-i qL} / t].
double bloch_cos_from_t(cplx t, double q_l);

// Real-frequency poles of the closed dispersion relations (roots of Lambda^2,
// plus omega = 0 for the cosine model), in ascending order.
std::vector<double> lambda_pole_frequencies(const EmitterConfig& emitter,
                                            const DispersionModel& dispersion);

// Uniform scan of cos(KL) over [omega_lo, omega_hi] with n points; samples
// within 1e-6 of a pole are dropped so poles sit in the interior of the
// surrounding runs.
std::vector<BandPoint> scan_band_points(const EmitterConfig& emitter,
                                        const CouplingConfig& coupling,
                                        const DispersionModel& dispersion,
                                        const LatticeConfig& lattice, double omega_lo,
                                        double omega_hi, int n);

// Maximal runs of equal forbidden flag, with interior edges refined by
// bisection of the supplied cos(KL) evaluator down to floating-point
// resolution (well below the 1e-10 omega2 requirement). Throws
// grid_too_coarse when any run is shorter than 3 points.
std::vector<BandInterval> classify_band(std::span<const BandPoint> points,
                                        const std::function<double(double)>& cos_kl);

// Upper edge of the first forbidden band whose interior intersects
// omega > omega2, searched over (omega2, 2 omega2). Throws no_gap_found.
double gap_end_above_resonance(const EmitterConfig& emitter, const CouplingConfig& coupling,
                               const DispersionModel& dispersion, const LatticeConfig& lattice);

// Gap-difference scan delta_omega_B(J) = omega_lB - omega_nlB at fixed
// emitter/coupling/lattice. The linear gap end is J-independent and computed
// once at construction.
class GapLaw {
public:
    GapLaw(EmitterConfig emitter, CouplingConfig coupling, LatticeConfig lattice);

    double linear_gap_end() const { return omega_lb_; }
    double gap_difference(double j) const;
    std::vector<std::pair<double, double>> sample(const std::vector<double>& j_grid) const;

    // Root of delta_omega_B(J) located by bisection; requires a sign change
    // over [j_lo, j_hi].
    double crossing(double j_lo, double j_hi, double tol = 1e-6) const;

private:
    EmitterConfig emitter_;
    CouplingConfig coupling_;
    LatticeConfig lattice_;
    double omega_lb_;
};

// Least-squares fit of delta_omega_B = a ln(J/omega2) + xi; returns
// b = exp(omega2/a). Requires >= 8 samples spanning at least
// [1.2 omega2, 5 omega2]; throws degenerate_fit when the design matrix is
// rank-deficient or the fitted slope is not positive (b would be undefined).
GapFit fit_gap_law(std::vector<std::pair<double, double>> samples, double omega2 = 1.0);

// 20 logarithmically spaced hopping rates in [1.2, 5] omega2.
std::vector<double> default_gap_fit_grid(double omega2 = 1.0);

}  // namespace wqed
