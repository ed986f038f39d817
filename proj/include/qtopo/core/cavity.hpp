#pragma once

#include <span>

#include "qtopo/core/types.hpp"

namespace qtopo {

/// Single-Lorentzian spectral density
///   J_ij(w) = (G_i G_j / pi) (Gamma_a/2) / ((w - w_a)^2 + (Gamma_a/2)^2),
/// with frequencies measured from the laser (w_a - w_L = mode_detuning).
double lorentzian_spectral_density(const SingleModeParams& p, int i, int j, double omega);

/// Liouvillian on (qubits) (x) (mode truncated at n_max photons). Emitter
/// detunings and drives follow the MasterEqParams sign conventions.
Superoperator build_single_mode_liouvillian(const SingleModeParams& p,
                                            std::span<const double> detunings,
                                            std::span<const double> drives);

/// Emitter-only parameters obtained by adiabatically eliminating the mode:
///   gamma_ij = gamma0 delta_ij + G_i G_j Gamma_a / (D^2 + Gamma_a^2/4)
///   g_ij     = -G_i G_j D / (D^2 + Gamma_a^2/4)
/// where D = mode_detuning. The diagonal of g is folded into the detunings.
MasterEqParams adiabatic_elimination(const SingleModeParams& p,
                                     std::span<const double> detunings,
                                     std::span<const double> drives);

/// Traces the mode out of a qubits (x) mode density matrix.
DensityMatrix trace_out_mode(const DensityMatrix& rho, int n_qubits, int n_max);

/// <a^dag a>
double mode_population(const DensityMatrix& rho, int n_qubits, int n_max);

/// Population of the highest retained Fock level.
double truncation_population(const DensityMatrix& rho, int n_qubits, int n_max);

}  // namespace qtopo
