#pragma once

#include "wqed/types.hpp"

namespace wqed {

struct TransferMatrix {
    cplx m11, m12, m21, m22;

    static TransferMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx det() const { return m11 * m22 - m12 * m21; }

    TransferMatrix operator*(const TransferMatrix& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
};

enum class PhaseMode { frequency_dependent, resonant };

// Periodic chain geometry. The spacing is stored as an absolute length;
// construct with from_lambda0() to pass it in units of the resonant
// wavelength lambda0 = 2 pi v_g / omega2. resonant_q = omega2 / v_g is fixed
// at construction and used by the resonant phase mode.
struct LatticeConfig {
    int n_emitters = 1;
    double spacing = 0.0;
    PhaseMode phase_mode = PhaseMode::frequency_dependent;
    double resonant_q = 1.0;

    static LatticeConfig from_lambda0(int n_emitters, double spacing_lambda0,
                                      PhaseMode mode = PhaseMode::frequency_dependent,
                                      double omega2 = 1.0, double v_g = 1.0);

    void validate() const;
};

double resonant_wavelength(double omega2, double v_g);

// Transfer matrix of one emitter, [[1/t*, -r*/t*], [-r/t, 1/t]].
// Throws zero_transmission for |t| below 1e-30 (a perfect mirror has no
// finite transfer matrix).
TransferMatrix emitter_matrix(cplx t, cplx r);

// Free propagation over phase qL: diag(e^{i qL}, e^{-i qL}).
TransferMatrix free_matrix(double q_l);

// Propagation phase accumulated over one lattice period.
double phase(double omega, const LatticeConfig& lattice, const CouplingConfig& coupling);

// (M_QE * M_F)^N by repeated multiplication. Chain transmission is
// 1/|m22|^2 of the result.
TransferMatrix chain_matrix(double omega, const EmitterConfig& emitter,
                            const CouplingConfig& coupling, const DispersionModel& dispersion,
                            const LatticeConfig& lattice);

struct ChainScatter {
    double T;
    double R;
};

// Net chain transmission/reflection through the matrix-power route, with
// internal rescaling so that deep band gaps underflow to zero instead of
// overflowing.
ChainScatter chain_scatter(double omega, const EmitterConfig& emitter,
                           const CouplingConfig& coupling, const DispersionModel& dispersion,
                           const LatticeConfig& lattice);

double chain_transmission(double omega, const EmitterConfig& emitter,
                          const CouplingConfig& coupling, const DispersionModel& dispersion,
                          const LatticeConfig& lattice);

// Closed-form transmission of an N-emitter chain from Chebyshev's identity,
// T_N = (1 + |r/t|^2 sin^2(N KL)/sin^2(KL))^{-1}, valid in the no-loss
// scenario. KL is the Bloch phase of one block, cos(KL) = Re[e^{-i qL}/t]; it
// reduces to qL for a transparent emitter and is continued with sinh in band
// gaps. At a band edge (qL = m pi for the physical lossless family) the
// removable singularity sin(N KL)/sin(KL) -> +-N is substituted.
// When |t|^2+|r|^2 deviates from 1 by more than 1e-6 the result is still
// returned and *lossy_input (if given) is set.
double chebyshev_transmission(int n, cplx t, cplx r, double q_l, bool* lossy_input = nullptr);

}  // namespace wqed
