#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qtopo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Basis convention used throughout: single-qubit |g> = index 0, |e> = index 1;
// qubit 1 is the most significant tensor factor and a cavity mode (when
// present) is the last one. Superoperators act on column-stacked density
// matrices, vec(A X B) = (B^T (x) A) vec(X).

/// Pure state of n qubits over the computational basis.
class StateVector {
 public:
  StateVector() = default;
  /// Normalizes nothing; throws if the norm deviates from 1 by more than 1e-12.
  StateVector(CVector amplitudes, int n_qubits);

  const CVector& amplitudes() const { return amplitudes_; }
  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  /// |phi><phi|
  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  CVector amplitudes_;
  int n_qubits_ = 0;
};

/// Hermitian, unit-trace, positive semi-definite matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Validates hermiticity (1e-10), trace (1e-10) and eigenvalues (>= -1e-8).
  explicit DensityMatrix(CMatrix entries);

  /// Skips validation; for callers that have just constructed a valid state.
  static DensityMatrix unchecked(CMatrix entries);
  static DensityMatrix pure(const StateVector& phi);

  const CMatrix& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  CMatrix entries_;
};

/// Drive-frame master-equation parameters, all in units of the free-space
/// decay rate gamma_0.
struct MasterEqParams {
  int n_qubits = 2;
  std::vector<double> delta;  ///< emitter-laser detunings
  std::vector<double> omega;  ///< drive amplitudes, sign carries the laser phase
  RMatrix g;                  ///< coherent couplings, symmetric, diagonal ignored
  RMatrix gamma;              ///< dissipative matrix, symmetric PSD

  /// Throws InvalidArgument on shape errors, asymmetric matrices, non-positive
  /// decay rates or a gamma matrix with an eigenvalue below -1e-10.
  void validate() const;

  /// sqrt-of-product mean of the individual decay rates.
  double collective_rate() const;
};

/// Liouvillian acting on column-stacked density matrices.
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(CMatrix matrix, Eigen::Index dim);

  const CMatrix& matrix() const { return matrix_; }
  /// Dimension of the underlying Hilbert space (matrix is dim^2 x dim^2).
  Eigen::Index dim() const { return dim_; }

  CMatrix apply(const CMatrix& rho) const;

 private:
  CMatrix matrix_;
  Eigen::Index dim_ = 0;
};

/// Two emitters coupled to a single lossy cavity mode.
struct SingleModeParams {
  double mode_detuning = 0.0;       ///< omega_a - omega_L
  double mode_linewidth = 1.0;      ///< Gamma_a
  std::vector<double> couplings;    ///< emitter-mode couplings G_i
  double gamma0 = 1.0;              ///< free-space decay of each emitter
  int n_max = 3;                    ///< photon-number truncation

  void validate() const;
};

CVector vectorize(const CMatrix& m);
CMatrix unvectorize(const CVector& v, Eigen::Index dim);

}  // namespace qtopo
