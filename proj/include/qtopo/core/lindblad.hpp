#pragma once

#include <span>
#include <vector>

#include "qtopo/core/types.hpp"

namespace qtopo {

/// Lowering operator sigma_k on an n-qubit register, optionally tensored with
/// an identity of size `tail_dim` (for a trailing cavity mode).
CMatrix lowering_operator(int n_qubits, int k, Eigen::Index tail_dim = 1);

/// Generic Lindbladian
///   L rho = -i[H, rho] + sum_ij rates(i,j) (O_j rho O_i^dag - 1/2 {O_i^dag O_j, rho}).
/// `rates` must be Hermitian PSD; this routine does not check it.
Superoperator lindblad_superoperator(const CMatrix& hamiltonian,
                                     std::span<const CMatrix> ops,
                                     const RMatrix& rates);

/// Drive-frame Hamiltonian of the emitter register.
CMatrix emitter_hamiltonian(const MasterEqParams& p);

/// Liouvillian of the driven emitters with the collective dissipative matrix.
/// Throws InvalidArgument if the parameters are invalid (including non-PSD gamma).
Superoperator build_liouvillian(const MasterEqParams& p);

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;  ///< ||L rho|| (Frobenius norm of the vector)
};

/// Relative smallest singular value of the trace-bordered system below which
/// the steady state is treated as degenerate.
inline constexpr double kSteadyStateConditioning = 1e-10;

/// Null vector of L normalized to unit trace. One row of L is replaced by the
/// trace functional and the resulting system is solved by LU. Throws
/// NumericalError if the null space is degenerate or the solve is singular.
SteadyState steady_state(const Superoperator& L);

/// rho(t) = exp(L t) rho0 at every requested time. Times must be strictly
/// increasing and non-negative. Propagators are built by scaling and squaring
/// for each distinct interval and reused when intervals repeat.
std::vector<DensityMatrix> evolve(const Superoperator& L, const DensityMatrix& rho0,
                                  std::span<const double> times);

struct LiouvillianGap {
  double gap = 0.0;
  double tau = 0.0;  ///< 1 / gap
};

/// Smallest decay rate among the non-stationary eigenmodes of L.
LiouvillianGap liouvillian_gap(const Superoperator& L, double tol_zero = 1e-9);

/// Dimension of the numerical null space of L (singular values below tol * ||L||).
int null_space_dimension(const Superoperator& L, double tol = 1e-10);

}  // namespace qtopo
