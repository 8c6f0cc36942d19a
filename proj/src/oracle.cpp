#include "wqed/oracle.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "wqed/scattering.hpp"

namespace wqed {

OracleSolution solve_single_emitter(double omega, const EmitterConfig& emitter,
                                    const CouplingConfig& coupling,
                                    const DispersionModel& dispersion) {
    emitter.validate();
    coupling.validate();
    if (!dispersion.is_linear() && !(omega > 0.0))
        throw Error(errc::invalid_frequency, "the cosine-dispersion equations require omega > 0");

    const double v_r = coupling.amplitude_r();
    const double v_l = coupling.amplitude_l();
    const double omega_rabi = emitter.omega_rabi;
    const auto [d2, d3] = complex_detunings(omega, emitter);
    // i v_g for linear dispersion, i J omega / v_g for the cosine model
    const cplx a = dispersion.is_linear()
                       ? cplx(0.0, coupling.v_g)
                       : cplx(0.0, dispersion.hopping() * omega / coupling.v_g);

    Eigen::Matrix4cd system;
    Eigen::Vector4cd rhs;
    system << -a, 0.0, v_r, 0.0,
              0.0, -a, v_l, 0.0,
              v_r / 2.0, v_l / 2.0, -d2, omega_rabi / 2.0,
              0.0, 0.0, omega_rabi / 2.0, -d3;
    rhs << -a, 0.0, -v_r / 2.0, 0.0;

    const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(system,
                                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    if (sigma(3) <= 0.0 || sigma(0) / sigma(3) > 1e14)
        throw Error(errc::singular_system, "amplitude equations are numerically singular");

    const Eigen::Vector4cd x = svd.solve(rhs);

    OracleSolution solution;
    solution.t = x(0);
    solution.r = x(1);
    solution.e2 = x(2);
    solution.e3 = x(3);
    const double rhs_norm = rhs.norm();
    solution.residual = rhs_norm > 0.0 ? (system * x - rhs).norm() / rhs_norm : 0.0;
    return solution;
}

double unitarity_scan(const Model& model, double omega_lo, double omega_hi, int n) {
    if (n < 100)
        throw Error(errc::invalid_argument, "unitarity scan requires n >= 100");
    double worst = 0.0;
    const double step = (omega_hi - omega_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const ScatteringResult amp = amplitudes(omega_lo + i * step, model);
        worst = std::max(worst, std::abs(amp.T() + amp.R() - 1.0));
    }
    return worst;
}

double chebyshev_vs_power_scan(const Model& model, const LatticeConfig& lattice, int n_max,
                               double omega_lo, double omega_hi, int n) {
    if (n < 2 || n_max < 1)
        throw Error(errc::invalid_argument, "scan requires n >= 2 and n_max >= 1");

    double worst = 0.0;
    const double step = (omega_hi - omega_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double omega = omega_lo + i * step;
        const double q_l = phase(omega, lattice, model.coupling);
        // skip the removable singularities of the closed form
        if (std::abs(q_l - M_PI * std::round(q_l / M_PI)) < 1e-4)
            continue;

        const ScatteringResult amp = amplitudes(omega, model);
        LatticeConfig chain = lattice;
        for (int count = 1; count <= n_max; ++count) {
            chain.n_emitters = count;
            const double power = chain_transmission(omega, model.emitter, model.coupling,
                                                    model.dispersion, chain);
            const double cheb = chebyshev_transmission(count, amp.t, amp.r, q_l);
            const double err = std::abs(power - cheb) / std::max({power, cheb, 1e-30});
            worst = std::max(worst, err);
        }
    }
    return worst;
}

}  // namespace wqed
