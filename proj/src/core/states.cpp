#include "qtopo/core/states.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qtopo/error.hpp"

namespace qtopo {

// ---- domain types -------------------------------------------------------

StateVector::StateVector(CVector amplitudes, int n_qubits)
    : amplitudes_(std::move(amplitudes)), n_qubits_(n_qubits) {
  if (n_qubits < 1 || amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidArgument("state vector dimension does not match 2^n_qubits");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("state vector is not normalized");
  }
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > 1e-10) {
    throw InvalidArgument("density matrix trace differs from 1");
  }
  const CMatrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::unchecked(CMatrix entries) {
  DensityMatrix out;
  out.entries_ = std::move(entries);
  return out;
}

DensityMatrix DensityMatrix::pure(const StateVector& phi) {
  return unchecked(phi.projector());
}

void MasterEqParams::validate() const {
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be positive");
  const auto n = static_cast<std::size_t>(n_qubits);
  if (delta.size() != n || omega.size() != n) {
    throw InvalidArgument("delta and omega need one entry per qubit");
  }
  if (g.rows() != n_qubits || g.cols() != n_qubits || gamma.rows() != n_qubits ||
      gamma.cols() != n_qubits) {
    throw InvalidArgument("g and gamma must be n_qubits x n_qubits");
  }
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      (gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("g and gamma must be symmetric");
  }
  for (int i = 0; i < n_qubits; ++i) {
    if (!(gamma(i, i) > 0.0)) throw InvalidArgument("decay rates gamma_ii must be positive");
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(gamma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidArgument("gamma is not positive semi-definite (min eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

double MasterEqParams::collective_rate() const {
  double log_sum = 0.0;
  for (int i = 0; i < n_qubits; ++i) log_sum += std::log(gamma(i, i));
  return std::exp(log_sum / n_qubits);
}

void SingleModeParams::validate() const {
  if (!(mode_linewidth > 0.0)) throw InvalidArgument("mode linewidth must be positive");
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  if (couplings.empty()) throw InvalidArgument("at least one emitter-mode coupling is required");
  if (!(gamma0 >= 0.0)) throw InvalidArgument("gamma0 must be non-negative");
}

Superoperator::Superoperator(CMatrix matrix, Eigen::Index dim)
    : matrix_(std::move(matrix)), dim_(dim) {
  if (matrix_.rows() != dim * dim || matrix_.cols() != dim * dim) {
    throw InvalidArgument("superoperator must be dim^2 x dim^2");
  }
}

CMatrix Superoperator::apply(const CMatrix& rho) const {
  return unvectorize(matrix_ * vectorize(rho), dim_);
}

CVector vectorize(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvectorize(const CVector& v, Eigen::Index dim) {
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

// ---- state constructors -------------------------------------------------

StateVector bell_state(Parity parity) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector a = CVector::Zero(4);
  a[1] = s;                                          // |ge>
  a[2] = parity == Parity::Even ? s : -s;            // |eg>
  return {a, 2};
}

StateVector w_state() {
  const double s = 1.0 / std::sqrt(3.0);
  CVector a = CVector::Zero(8);
  a[1] = s;  // |gge>
  a[2] = s;  // |geg>
  a[4] = s;  // |egg>
  return {a, 3};
}

namespace {

StateVector single_excitation(double c_gge, double c_geg, double c_egg) {
  CVector a = CVector::Zero(8);
  a[1] = c_gge;
  a[2] = c_geg;
  a[4] = c_egg;
  a.normalize();
  return {a, 3};
}

}  // namespace

StateVector w_alpha_state() {
  const double a = (1.0 + std::sqrt(3.0)) / 2.0;
  const double b = (1.0 - std::sqrt(3.0)) / 2.0;
  return single_excitation(1.0, -a, -b);
}

StateVector w_beta_state() {
  const double a = (1.0 + std::sqrt(3.0)) / 2.0;
  const double b = (1.0 - std::sqrt(3.0)) / 2.0;
  return single_excitation(1.0, -b, -a);
}

StateVector basis_state(const std::string& label) {
  if (label.empty()) throw InvalidArgument("empty basis label");
  Eigen::Index index = 0;
  for (char c : label) {
    if (c != 'g' && c != 'e') throw InvalidArgument("basis label must contain only 'g' and 'e'");
    index = 2 * index + (c == 'e' ? 1 : 0);
  }
  CVector a = CVector::Zero(Eigen::Index{1} << label.size());
  a[index] = 1.0;
  return {a, static_cast<int>(label.size())};
}

std::vector<std::string> basis_labels(int n_qubits) {
  std::vector<std::string> labels;
  const int dim = 1 << n_qubits;
  labels.reserve(dim);
  for (int idx = 0; idx < dim; ++idx) {
    std::string s(n_qubits, 'g');
    for (int q = 0; q < n_qubits; ++q) {
      if (idx & (1 << (n_qubits - 1 - q))) s[q] = 'e';
    }
    labels.push_back(std::move(s));
  }
  return labels;
}

}  // namespace qtopo
