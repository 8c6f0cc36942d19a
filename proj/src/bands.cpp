#include "wqed/bands.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

namespace {

constexpr double kPoleFloor = 1e-30;
constexpr double kPoleSkip = 1e-6;  // units of omega2

void require_lossless_symmetric(const EmitterConfig& emitter, const CouplingConfig& coupling) {
    if (emitter.gamma2 != 0.0 || emitter.gamma3 != 0.0)
        throw Error(errc::invalid_argument,
                    "closed dispersion relations require gamma2 = gamma3 = 0");
    if (!coupling.symmetric())
        throw Error(errc::invalid_argument,
                    "closed dispersion relations require symmetric coupling");
}

}  // namespace

double bloch_cos_closed(double omega, const EmitterConfig& emitter,
                        const CouplingConfig& coupling, const DispersionModel& dispersion,
                        const LatticeConfig& lattice) {
    require_lossless_symmetric(emitter, coupling);

    const double d2 = omega - emitter.omega2;
    const double d3 = omega - emitter.omega3();
    const double lambda_sq = d2 * d3 - emitter.omega_rabi * emitter.omega_rabi / 4.0;
    const double gamma = coupling.gamma_l;
    const double q_l = phase(omega, lattice, coupling);

    double correction;
    if (dispersion.is_linear()) {
        if (std::abs(lambda_sq) < kPoleFloor)
            throw Error(errc::pole_at_band_edge, "evaluated exactly at a polariton pole");
        correction = gamma * d3 / (2.0 * lambda_sq);
    } else {
        const double lambda_bar_cubed = omega * lambda_sq;
        if (std::abs(lambda_bar_cubed) < kPoleFloor)
            throw Error(errc::pole_at_band_edge, "evaluated exactly at a polariton pole");
        correction = gamma * d3 / (lambda_bar_cubed * dispersion.hopping());
    }
    return std::cos(q_l) + std::sin(q_l) * correction;
}

double bloch_cos_from_t(cplx t, double q_l) {
    if (std::abs(t) < 1e-30)
        throw Error(errc::zero_transmission, "trace identity undefined for vanishing t");
    return (std::polar(1.0, -q_l) / t).real();
}

std::vector<double> lambda_pole_frequencies(const EmitterConfig& emitter,
                                            const DispersionModel& dispersion) {
    // roots of (omega - omega2)(omega - omega3) = Omega^2/4
    const double half_delta = emitter.delta / 2.0;
    const double disc = std::sqrt(half_delta * half_delta * 4.0 +
                                  emitter.omega_rabi * emitter.omega_rabi) / 2.0;
    std::vector<double> poles{emitter.omega2 - half_delta - disc,
                              emitter.omega2 - half_delta + disc};
    if (!dispersion.is_linear())
        poles.push_back(0.0);
    std::sort(poles.begin(), poles.end());
    return poles;
}

std::vector<BandPoint> scan_band_points(const EmitterConfig& emitter,
                                        const CouplingConfig& coupling,
                                        const DispersionModel& dispersion,
                                        const LatticeConfig& lattice, double omega_lo,
                                        double omega_hi, int n) {
    if (!(omega_lo < omega_hi) || n < 2)
        throw Error(errc::invalid_argument, "band scan requires omega_lo < omega_hi and n >= 2");

    const auto poles = lambda_pole_frequencies(emitter, dispersion);
    const double skip = kPoleSkip * emitter.omega2;

    std::vector<BandPoint> points;
    points.reserve(n);
    const double step = (omega_hi - omega_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double omega = omega_lo + i * step;
        bool near_pole = false;
        for (double p : poles)
            near_pole = near_pole || std::abs(omega - p) < skip;
        if (near_pole)
            continue;

        BandPoint point;
        point.omega = omega;
        point.cos_kl = bloch_cos_closed(omega, emitter, coupling, dispersion, lattice);
        point.forbidden = std::abs(point.cos_kl) > 1.0;
        if (point.forbidden)
            point.kappa = std::acosh(std::abs(point.cos_kl)) / lattice.spacing;
        else
            point.k_real = std::acos(std::clamp(point.cos_kl, -1.0, 1.0)) / lattice.spacing;
        points.push_back(point);
    }
    return points;
}

namespace {

bool forbidden_at(const std::function<double(double)>& cos_kl, double omega) {
    try {
        return std::abs(cos_kl(omega)) > 1.0;
    } catch (const Error& e) {
        if (e.code() == errc::pole_at_band_edge)
            return true;  // |cos KL| diverges at the pole
        throw;
    }
}

double refine_edge(const std::function<double(double)>& cos_kl, double lo, double hi,
                   bool lo_forbidden) {
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (forbidden_at(cos_kl, mid) == lo_forbidden)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<BandInterval> classify_band(std::span<const BandPoint> points,
                                        const std::function<double(double)>& cos_kl) {
    if (points.size() < 3)
        throw Error(errc::grid_too_coarse, "band classification needs at least 3 points");

    std::vector<BandInterval> intervals;
    std::size_t i = 0;
    while (i < points.size()) {
        std::size_t j = i;
        while (j + 1 < points.size() && points[j + 1].forbidden == points[i].forbidden)
            ++j;
        if (j - i + 1 < 3)
            throw Error(errc::grid_too_coarse,
                        "a band spans fewer than 3 grid points; refine the scan grid");

        double lo = points[i].omega;
        double hi = points[j].omega;
        if (i > 0)
            lo = intervals.back().omega_hi;
        if (j + 1 < points.size())
            hi = refine_edge(cos_kl, points[j].omega, points[j + 1].omega, points[i].forbidden);

        intervals.push_back({points[i].forbidden ? BandKind::forbidden : BandKind::allowed,
                             lo, hi});
        i = j + 1;
    }
    return intervals;
}

namespace {

std::vector<BandInterval> classify_window(const EmitterConfig& emitter,
                                          const CouplingConfig& coupling,
                                          const DispersionModel& dispersion,
                                          const LatticeConfig& lattice, double omega_lo,
                                          double omega_hi, double points_per_omega2 = 2e4) {
    const int n = static_cast<int>(std::ceil((omega_hi - omega_lo) / emitter.omega2 *
                                             points_per_omega2)) + 1;
    const auto points = scan_band_points(emitter, coupling, dispersion, lattice, omega_lo,
                                         omega_hi, n);
    const auto evaluator = [&](double omega) {
        return bloch_cos_closed(omega, emitter, coupling, dispersion, lattice);
    };
    return classify_band(points, evaluator);
}

}  // namespace

double gap_end_above_resonance(const EmitterConfig& emitter, const CouplingConfig& coupling,
                               const DispersionModel& dispersion, const LatticeConfig& lattice) {
    const double omega2 = emitter.omega2;
    const auto intervals =
        classify_window(emitter, coupling, dispersion, lattice, 0.86 * omega2, 3.2 * omega2);
    for (const auto& interval : intervals) {
        if (interval.kind != BandKind::forbidden)
            continue;
        if (interval.omega_hi > omega2 && interval.omega_lo < 2.0 * omega2)
            return interval.omega_hi;
    }
    throw Error(errc::no_gap_found, "no forbidden band intersects (omega2, 2 omega2)");
}

GapLaw::GapLaw(EmitterConfig emitter, CouplingConfig coupling, LatticeConfig lattice)
    : emitter_(emitter), coupling_(coupling), lattice_(lattice),
      omega_lb_(gap_end_above_resonance(emitter, coupling,
                                        DispersionModel::linear(coupling.v_g), lattice)) {}

double GapLaw::gap_difference(double j) const {
    return omega_lb_ - gap_end_above_resonance(emitter_, coupling_,
                                               DispersionModel::nonlinear(j), lattice_);
}

std::vector<std::pair<double, double>> GapLaw::sample(const std::vector<double>& j_grid) const {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(j_grid.size());
    for (double j : j_grid)
        samples.emplace_back(j, gap_difference(j));
    std::sort(samples.begin(), samples.end());
    return samples;
}

double GapLaw::crossing(double j_lo, double j_hi, double tol) const {
    double f_lo = gap_difference(j_lo);
    double f_hi = gap_difference(j_hi);
    if (f_lo == 0.0)
        return j_lo;
    if (f_hi == 0.0)
        return j_hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw Error(errc::invalid_argument, "crossing bracket does not change sign");
    while (j_hi - j_lo > tol) {
        const double mid = 0.5 * (j_lo + j_hi);
        const double f_mid = gap_difference(mid);
        if (f_mid == 0.0)
            return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            j_lo = mid;
            f_lo = f_mid;
        } else {
            j_hi = mid;
        }
    }
    return 0.5 * (j_lo + j_hi);
}

GapFit fit_gap_law(std::vector<std::pair<double, double>> samples, double omega2) {
    if (samples.size() < 8)
        throw Error(errc::invalid_argument, "gap-law fit requires at least 8 samples");
    std::sort(samples.begin(), samples.end());
    const double j_min = samples.front().first;
    const double j_max = samples.back().first;
    if (j_min > 1.2 * omega2 * (1.0 + 1e-12) || j_max < 5.0 * omega2 * (1.0 - 1e-12))
        throw Error(errc::invalid_argument,
                    "gap-law fit requires J samples spanning at least [1.2, 5] omega2");

    const double n = static_cast<double>(samples.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [j, d] : samples) {
        sx += std::log(j / omega2);
        sy += d;
    }
    const double mean_x = sx / n;
    const double mean_y = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [j, d] : samples) {
        const double dx = std::log(j / omega2) - mean_x;
        sxx += dx * dx;
        sxy += dx * (d - mean_y);
    }
    if (sxx < 1e-12)
        throw Error(errc::degenerate_fit, "all J samples coincide; slope is undetermined");

    const double a = sxy / sxx;
    if (a < 1e-9)
        throw Error(errc::degenerate_fit, "fitted slope is not positive; base b is undefined");
    const double xi = mean_y - a * mean_x;

    double ss = 0.0;
    for (const auto& [j, d] : samples) {
        const double resid = d - (a * std::log(j / omega2) + xi);
        ss += resid * resid;
    }

    GapFit fit;
    fit.base_b = std::exp(omega2 / a);
    fit.xi = xi;
    fit.rms_residual = std::sqrt(ss / n);
    fit.j_samples = std::move(samples);
    return fit;
}

std::vector<double> default_gap_fit_grid(double omega2) {
    constexpr int kCount = 20;
    const double lo = std::log(1.2 * omega2);
    const double hi = std::log(5.0 * omega2);
    std::vector<double> grid(kCount);
    for (int i = 0; i < kCount; ++i)
        grid[i] = std::exp(lo + (hi - lo) * i / (kCount - 1));
    return grid;
}

}  // namespace wqed
