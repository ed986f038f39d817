#pragma once

#include <cmath>

#include <Eigen/Core>

namespace qtopo {

/// Estimate of the smallest singular value of a factorized square matrix by
/// inverse power iteration on (A^H A)^-1, reusing the factorization. Exactly
/// singular systems return 0.
template <class Lu>
double smallest_singular_value(const Lu& lu, int iterations = 4) {
  using Vec = Eigen::Matrix<typename Lu::Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = lu.rows();
  Vec x(n);
  for (Eigen::Index k = 0; k < n; ++k) x[k] = std::sin(1.0 + 0.7 * static_cast<double>(k));  // fixed start
  x.normalize();
  double growth = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Vec y = lu.solve(x);
    const Vec z = lu.adjoint().solve(y);
    growth = z.norm();
    if (!std::isfinite(growth)) return 0.0;
    if (growth == 0.0) break;
    x = z / growth;
  }
  return growth > 0.0 ? 1.0 / std::sqrt(growth) : 0.0;
}

}  // namespace qtopo
