#include "wqed/transfer.hpp"

#include <cmath>

namespace wqed {

namespace {
constexpr double kTransmissionFloor = 1e-30;
constexpr double kLossTolerance = 1e-6;
constexpr double kEdgeTolerance = 1e-12;

// log(sinh(z)) for z > 0 without overflow
double log_sinh(double z) { return z + std::log1p(-std::exp(-2.0 * z)) - std::log(2.0); }
}  // namespace

double resonant_wavelength(double omega2, double v_g) {
    return 2.0 * M_PI * v_g / omega2;
}

LatticeConfig LatticeConfig::from_lambda0(int n_emitters, double spacing_lambda0, PhaseMode mode,
                                          double omega2, double v_g) {
    LatticeConfig lattice;
    lattice.n_emitters = n_emitters;
    lattice.spacing = spacing_lambda0 * resonant_wavelength(omega2, v_g);
    lattice.phase_mode = mode;
    lattice.resonant_q = omega2 / v_g;
    lattice.validate();
    return lattice;
}

void LatticeConfig::validate() const {
    if (n_emitters < 1)
        throw Error(errc::validation_error, "lattice.n_emitters must be >= 1");
    if (!(spacing > 0.0))
        throw Error(errc::validation_error, "lattice.spacing must be > 0");
    if (!(resonant_q > 0.0))
        throw Error(errc::validation_error, "lattice.resonant_q must be > 0");
}

TransferMatrix emitter_matrix(cplx t, cplx r) {
    if (std::abs(t) < kTransmissionFloor)
        throw Error(errc::zero_transmission, "perfect mirror has no finite transfer matrix");
    const cplx tc = std::conj(t);
    const cplx rc = std::conj(r);
    return {1.0 / tc, -rc / tc, -r / t, 1.0 / t};
}

TransferMatrix free_matrix(double q_l) {
    const cplx fwd = std::polar(1.0, q_l);
    return {fwd, 0.0, 0.0, std::conj(fwd)};
}

double phase(double omega, const LatticeConfig& lattice, const CouplingConfig& coupling) {
    const double q = lattice.phase_mode == PhaseMode::resonant ? lattice.resonant_q
                                                               : omega / coupling.v_g;
    return q * lattice.spacing;
}

namespace {

TransferMatrix block_matrix(double omega, const EmitterConfig& emitter,
                            const CouplingConfig& coupling, const DispersionModel& dispersion,
                            const LatticeConfig& lattice) {
    const Model model{emitter, coupling, dispersion};
    const ScatteringResult amp = amplitudes(omega, model);
    return emitter_matrix(amp.t, amp.r) * free_matrix(phase(omega, lattice, coupling));
}

double max_abs(const TransferMatrix& m) {
    return std::max(std::max(std::abs(m.m11), std::abs(m.m12)),
                    std::max(std::abs(m.m21), std::abs(m.m22)));
}

}  // namespace

TransferMatrix chain_matrix(double omega, const EmitterConfig& emitter,
                            const CouplingConfig& coupling, const DispersionModel& dispersion,
                            const LatticeConfig& lattice) {
    const TransferMatrix block = block_matrix(omega, emitter, coupling, dispersion, lattice);
    TransferMatrix result = TransferMatrix::identity();
    for (int i = 0; i < lattice.n_emitters; ++i)
        result = result * block;
    return result;
}

ChainScatter chain_scatter(double omega, const EmitterConfig& emitter,
                           const CouplingConfig& coupling, const DispersionModel& dispersion,
                           const LatticeConfig& lattice) {
    const TransferMatrix block = block_matrix(omega, emitter, coupling, dispersion, lattice);
    TransferMatrix result = TransferMatrix::identity();
    double log_scale = 0.0;
    for (int i = 0; i < lattice.n_emitters; ++i) {
        result = result * block;
        const double scale = max_abs(result);
        if (scale > 1e100) {
            const double inv = 1.0 / scale;
            result.m11 *= inv;
            result.m12 *= inv;
            result.m21 *= inv;
            result.m22 *= inv;
            log_scale += std::log(scale);
        }
    }
    const double log_t = -2.0 * (std::log(std::abs(result.m22)) + log_scale);
    const double transmission = log_t > -745.0 ? std::exp(log_t) : 0.0;
    const double reflection = std::norm(result.m21 / result.m22);
    return {transmission, reflection};
}

double chain_transmission(double omega, const EmitterConfig& emitter,
                          const CouplingConfig& coupling, const DispersionModel& dispersion,
                          const LatticeConfig& lattice) {
    return chain_scatter(omega, emitter, coupling, dispersion, lattice).T;
}

double chebyshev_transmission(int n, cplx t, cplx r, double q_l, bool* lossy_input) {
    if (n < 1)
        throw Error(errc::invalid_argument, "chain length must be >= 1");
    if (std::abs(t) < kTransmissionFloor)
        throw Error(errc::zero_transmission, "chebyshev form undefined for vanishing t");

    if (lossy_input)
        *lossy_input = std::abs(std::norm(t) + std::norm(r) - 1.0) > kLossTolerance;

    const double x = (std::polar(1.0, -q_l) / t).real();  // cos(KL), half-trace of the block
    const double rho_sq = std::norm(r) / std::norm(t);

    double sin_ratio_sq;  // sin^2(N KL) / sin^2(KL)
    const double ax = std::abs(x);
    if (std::abs(ax - 1.0) < kEdgeTolerance) {
        sin_ratio_sq = static_cast<double>(n) * n;
    } else if (ax < 1.0) {
        const double kl = std::acos(x);
        const double s = std::sin(n * kl) / std::sin(kl);
        sin_ratio_sq = s * s;
    } else {
        const double kappa = std::acosh(ax);
        const double log_ratio = log_sinh(n * kappa) - log_sinh(kappa);
        if (2.0 * log_ratio > 700.0)
            return 0.0;
        sin_ratio_sq = std::exp(2.0 * log_ratio);
    }
    return 1.0 / (1.0 + rho_sq * sin_ratio_sq);
}

}  // namespace wqed
