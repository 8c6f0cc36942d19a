#pragma once

#include "wqed/transfer.hpp"
#include "wqed/types.hpp"

namespace wqed {

// Direct solution of the four coupled amplitude equations.
struct OracleSolution {
    cplx t;
    cplx r;
    cplx e2;  // excited-state amplitude
    cplx e3;  // metastable-state amplitude
    double residual = 0.0;  // relative residual of the assembled linear system
};

// Assembles and solves the 4x4 system for (t, r, e2, e3):
//   i v_g (1 - t) + V_R e2 = 0
//   -i v_g r + V_L e2 = 0
//   (V_R/2)(t+1) + (V_L/2) r + (Omega/2) e3 = (omega - pole2) e2
//   (Omega/2) e2 = (omega - pole3) e3
// with the first two equations replaced by
//   -(i J omega / v_g)(t - 1) + V_R e2 = 0,  -(i J omega / v_g) r + V_L e2 = 0
// for the cosine-dispersion model. V_d is the positive root of
// Gamma_d v_g / 2. Independent of the closed forms by construction; used to
// cross-check them. Throws singular_system when the matrix is numerically
// singular (condition number above 1e14).
OracleSolution solve_single_emitter(double omega, const EmitterConfig& emitter,
                                    const CouplingConfig& coupling,
                                    const DispersionModel& dispersion);

// max |T + R - 1| over a uniform frequency grid.
double unitarity_scan(const Model& model, double omega_lo, double omega_hi, int n);

// max relative |T_chebyshev - T_power| over grid x N in {1..n_max}, skipping
// frequencies within 1e-4 of qL = m pi.
double chebyshev_vs_power_scan(const Model& model, const LatticeConfig& lattice, int n_max,
                               double omega_lo, double omega_hi, int n);

}  // namespace wqed
