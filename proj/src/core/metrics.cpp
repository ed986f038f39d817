#include "qtopo/core/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qtopo/error.hpp"

namespace qtopo {

int qubit_count(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n == 0) {
    throw InvalidArgument("matrix dimension " + std::to_string(dim) + " is not 2^n");
  }
  return n;
}

double fidelity(const DensityMatrix& rho, const StateVector& phi) {
  if (rho.dim() != phi.dim()) throw InvalidArgument("fidelity: dimension mismatch");
  const double f = phi.amplitudes().dot(rho.entries() * phi.amplitudes()).real();
  if (!(f >= -1e-10 && f <= 1.0 + 1e-10)) {
    throw NumericalError("fidelity " + std::to_string(f) + " outside [0, 1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
  return rho.entries().squaredNorm();
}

double population(const DensityMatrix& rho, Eigen::Index basis_index) {
  if (basis_index < 0 || basis_index >= rho.dim()) throw InvalidArgument("basis index out of range");
  return rho(basis_index, basis_index).real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, int k) {
  const int n = qubit_count(rho.dim());
  if (n < 2) throw InvalidArgument("partial trace needs at least two qubits");
  if (k < 0 || k >= n) throw InvalidArgument("partial trace: qubit index out of range");
  const int bit = n - 1 - k;
  const Eigen::Index low_mask = (Eigen::Index{1} << bit) - 1;
  auto full_index = [&](Eigen::Index reduced, Eigen::Index s) {
    return ((reduced & ~low_mask) << 1) | (s << bit) | (reduced & low_mask);
  };
  const Eigen::Index out_dim = rho.dim() / 2;
  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index a = 0; a < out_dim; ++a) {
    for (Eigen::Index b = 0; b < out_dim; ++b) {
      out(a, b) = rho(full_index(a, 0), full_index(b, 0)) + rho(full_index(a, 1), full_index(b, 1));
    }
  }
  return DensityMatrix::unchecked(std::move(out));
}

namespace {

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  RVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = ev[i] > 1e-13 ? std::sqrt(ev[i]) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw InvalidArgument("concurrence needs a two-qubit density matrix");
  CMatrix spin_flip = CMatrix::Zero(4, 4);
  spin_flip(0, 3) = -1.0;
  spin_flip(1, 2) = 1.0;
  spin_flip(2, 1) = 1.0;
  spin_flip(3, 0) = -1.0;
  // The square roots of the eigenvalues of rho * flip(rho) are the singular
  // values of sqrt(rho) * sqrt(flip(rho)), which avoids taking square roots of
  // round-off sized eigenvalues.
  const CMatrix root = psd_sqrt(rho.entries());
  const CMatrix flipped_root = spin_flip * root.conjugate() * spin_flip;
  Eigen::JacobiSVD<CMatrix> svd(root * flipped_root);
  const RVector lambda = svd.singularValues();  // descending
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double trace_distance_norm(const CMatrix& a, const CMatrix& b) {
  const CMatrix d = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qtopo
