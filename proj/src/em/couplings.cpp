#include "qtopo/em/couplings.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qtopo/error.hpp"

namespace qtopo::em {

PsdProjection psd_project(const RMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("psd_project needs a square matrix");
  const RMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);
  if (es.eigenvalues().minCoeff() >= -1e-10) return {m, 0.0, false};
  const RVector clamped = es.eigenvalues().cwiseMax(0.0);
  RMatrix projected = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
  projected = 0.5 * (projected + projected.transpose()).eval();
  const double magnitude = (projected - m).norm();
  return {projected, magnitude, magnitude > 0.05 * m.norm()};
}

CMatrix green_matrix(std::span<const FieldSolution> fields, const EmitterLayout& layout) {
  const int n = layout.size();
  if (static_cast<int>(fields.size()) != n) throw InvalidArgument("need one field solution per emitter");
  CMatrix G(n, n);
  for (int i = 0; i < n; ++i) {
    if (fields[i].source_index != i) throw InvalidArgument("field solutions must be ordered by emitter");
    for (int j = 0; j < n; ++j) {
      // field of source j sampled at emitter i
      G(i, j) = 0.5 * (fields[j].at(layout.positions[i]) + fields[i].at(layout.positions[j]));
    }
  }
  return G;
}

CouplingSet couplings_from_green(const CMatrix& green, double freespace_ref) {
  if (!(freespace_ref > 0.0)) throw InvalidArgument("vacuum reference must be positive (bad grid)");
  const auto n = green.rows();
  RMatrix gamma = green.imag() / freespace_ref;
  RMatrix g = green.real() / (2.0 * freespace_ref);
  g.diagonal().setZero();
  auto proj = psd_project(gamma);
  CouplingSet out;
  out.g = g;
  out.gamma = proj.matrix;
  out.projection_magnitude = proj.magnitude;
  out.projection_warning = proj.warning;
  double log_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(out.gamma(i, i) > 0.0)) throw NumericalError("non-positive emitter decay rate from field solve");
    log_sum += std::log(out.gamma(i, i));
  }
  out.purcell = std::exp(log_sum / static_cast<double>(n));
  return out;
}

CouplingSet couplings_from_fields(std::span<const FieldSolution> fields, const EmitterLayout& layout,
                                  double freespace_ref) {
  return couplings_from_green(green_matrix(fields, layout), freespace_ref);
}

}  // namespace qtopo::em
