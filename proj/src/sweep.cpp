#include "wqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include "wqed/oracle.hpp"
#include "wqed/scattering.hpp"

namespace wqed {

void parallel_for(int n, const std::function<void(int)>& fn) {
    int max_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (max_threads < 1)
        max_threads = 1;
    if (const char* env = std::getenv("WQED_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1)
            max_threads = std::min(max_threads, cap);
    }
    const int workers = std::min(max_threads, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

namespace {

std::vector<double> sweep_grid(const SweepConfig& sweep) {
    std::vector<double> grid(sweep.n_points);
    const double step = (sweep.omega_max - sweep.omega_min) / (sweep.n_points - 1);
    for (int i = 0; i < sweep.n_points; ++i)
        grid[i] = sweep.omega_min + i * step;
    return grid;
}

void attach_omega(const Error& e, double omega) {
    throw Error(e.code(), std::string(e.what()) + " (at omega = " + std::to_string(omega) + ")");
}

}  // namespace

SpectrumResult run_spectrum(const RunConfig& config) {
    config.validate();
    SpectrumResult result;
    const auto grid = sweep_grid(config.sweep);
    result.rows.resize(grid.size());

    const bool chain = config.lattice.has_value();
    if (chain && config.sweep.derivative)
        throw Error(errc::validation_error,
                    "the derivative column is supported for single-emitter sweeps only");

    const Model model = config.model();
    if (!chain) {
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            try {
                const ScatteringResult amp = amplitudes(grid[i], model);
                SpectrumRow row{grid[i], amp.T(), amp.R(), std::nullopt};
                if (config.sweep.derivative)
                    row.dT_domega = transmission_derivative(grid[i], model);
                result.rows[i] = row;
            } catch (const Error& e) {
                attach_omega(e, grid[i]);
            }
        });
        return result;
    }

    const LatticeConfig lattice = config.lattice->to_lattice(config.emitter, config.coupling);
    const bool lossless = config.emitter.gamma2 == 0.0 && config.emitter.gamma3 == 0.0;
    if (lossless) {
        result.notices.push_back("lossless chain: using the Chebyshev closed form");
        std::atomic<bool> lossy_flagged{false};
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            try {
                const ScatteringResult amp = amplitudes(grid[i], model);
                const double q_l = phase(grid[i], lattice, config.coupling);
                bool lossy = false;
                const double t_n = chebyshev_transmission(lattice.n_emitters, amp.t, amp.r, q_l,
                                                          &lossy);
                if (lossy)
                    lossy_flagged = true;
                result.rows[i] = {grid[i], t_n, 1.0 - t_n, std::nullopt};
            } catch (const Error& e) {
                attach_omega(e, grid[i]);
            }
        });
        if (lossy_flagged)
            result.notices.push_back(
                "warning: |t|^2 + |r|^2 deviates from 1; the closed form assumes no loss");
    } else {
        result.notices.push_back(
            "lossy chain (gamma2 > 0 or gamma3 > 0): using the matrix-power route");
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            try {
                const ChainScatter sc = chain_scatter(grid[i], config.emitter, config.coupling,
                                                      config.dispersion, lattice);
                result.rows[i] = {grid[i], sc.T, sc.R, std::nullopt};
            } catch (const Error& e) {
                attach_omega(e, grid[i]);
            }
        });
    }
    return result;
}

namespace {

struct GapAboveResonance {
    bool found = false;
    double lo = 0.0;
    double hi = 0.0;
};

GapAboveResonance first_gap_above(const std::vector<BandInterval>& intervals, double omega2) {
    for (const auto& interval : intervals)
        if (interval.kind == BandKind::forbidden && interval.omega_hi > omega2 &&
            interval.omega_lo < 2.0 * omega2)
            return {true, interval.omega_lo, interval.omega_hi};
    return {};
}

std::vector<BandInterval> intervals_for(const EmitterConfig& emitter,
                                        const CouplingConfig& coupling,
                                        const DispersionModel& dispersion,
                                        const LatticeConfig& lattice, double lo, double hi,
                                        int n) {
    const auto points = scan_band_points(emitter, coupling, dispersion, lattice, lo, hi, n);
    return classify_band(points, [&](double omega) {
        return bloch_cos_closed(omega, emitter, coupling, dispersion, lattice);
    });
}

}  // namespace

BandsResult run_bands(const RunConfig& config) {
    config.validate();
    if (!config.bands)
        throw Error(errc::validation_error, "bands run requires a 'bands' section");

    BandsResult result;
    const Model model = config.model();
    const auto grid = sweep_grid(config.sweep);
    const double omega2 = config.emitter.omega2;

    for (double spacing : config.bands->spacings_lambda0) {
        const LatticeConfig lattice =
            LatticeConfig::from_lambda0(1, spacing, config.bands->phase_mode, omega2,
                                        config.coupling.v_g);

        const auto points = scan_band_points(config.emitter, config.coupling, config.dispersion,
                                             lattice, config.sweep.omega_min,
                                             config.sweep.omega_max, config.sweep.n_points);
        for (const auto& point : points) {
            const ScatteringResult amp = amplitudes(point.omega, model);
            result.rows.push_back({spacing, point.omega, amp.T(), amp.R(), point.cos_kl,
                                   point.forbidden});
        }

        GapReport report;
        report.spacing_lambda0 = spacing;
        report.intervals = classify_band(points, [&](double omega) {
            return bloch_cos_closed(omega, config.emitter, config.coupling, config.dispersion,
                                    lattice);
        });
        const auto gap = first_gap_above(report.intervals, omega2);
        report.gap_found = gap.found;
        if (!gap.found)
            result.notices.push_back("no band gap intersects (omega2, 2 omega2) at spacing " +
                                     std::to_string(spacing));
        report.gap_lo = gap.lo;
        report.gap_hi = gap.hi;

        if (gap.found && !config.dispersion.is_linear()) {
            const auto linear_intervals = intervals_for(
                config.emitter, config.coupling, DispersionModel::linear(config.coupling.v_g),
                lattice, config.sweep.omega_min, config.sweep.omega_max, config.sweep.n_points);
            const auto linear_gap = first_gap_above(linear_intervals, omega2);
            if (linear_gap.found) {
                report.linear_reference = true;
                report.linear_gap_lo = linear_gap.lo;
                report.linear_gap_hi = linear_gap.hi;
                report.width_ratio =
                    (gap.hi - gap.lo) / (linear_gap.hi - linear_gap.lo);
                report.delta_omega_b = linear_gap.hi - gap.hi;
            }
        }
        result.reports.push_back(report);
    }
    return result;
}

GapFitReport run_gapfit(const RunConfig& config) {
    config.validate();
    if (!config.gapfit)
        throw Error(errc::validation_error, "gapfit run requires a 'gapfit' section");

    const GapFitSpec& spec = *config.gapfit;
    const LatticeConfig lattice = LatticeConfig::from_lambda0(
        1, spec.spacing_lambda0, spec.phase_mode, config.emitter.omega2, config.coupling.v_g);

    const GapLaw law(config.emitter, config.coupling, lattice);

    std::vector<double> j_grid(spec.j_points);
    const double log_lo = std::log(spec.j_min);
    const double log_hi = std::log(spec.j_max);
    for (int i = 0; i < spec.j_points; ++i)
        j_grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (spec.j_points - 1));

    std::vector<std::pair<double, double>> samples(j_grid.size());
    parallel_for(static_cast<int>(j_grid.size()), [&](int i) {
        samples[i] = {j_grid[i], law.gap_difference(j_grid[i])};
    });

    GapFitReport report;
    report.linear_gap_end = law.linear_gap_end();
    report.fit = fit_gap_law(samples, config.emitter.omega2);

    // locate the sign change of delta_omega_B below the fit grid if needed
    const double omega2 = config.emitter.omega2;
    double lo = 0.5 * omega2;
    double hi = spec.j_max;
    if (law.gap_difference(lo) < 0.0 && law.gap_difference(hi) > 0.0) {
        report.crossing_found = true;
        report.crossing_j = law.crossing(lo, hi, 1e-6 * omega2);
    } else {
        report.notices.push_back("delta_omega_B does not change sign over the scanned range");
    }
    return report;
}

}  // namespace wqed
