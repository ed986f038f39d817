#pragma once

#include <random>

#include "qtopo/core/types.hpp"

namespace qtopo::testing {

inline RMatrix random_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  RMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  return a * a.transpose() / n + 0.1 * RMatrix::Identity(n, n);
}

inline MasterEqParams random_params(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MasterEqParams p;
  p.n_qubits = n;
  for (int i = 0; i < n; ++i) {
    p.delta.push_back(u(rng));
    p.omega.push_back(u(rng));
  }
  p.g = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.g(i, j) = p.g(j, i) = u(rng);
  p.gamma = random_psd(n, rng);
  return p;
}

inline CMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (a + a.adjoint());
}

inline CMatrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

/// Two-qubit dark-state parameters: gamma_12 = gamma_11 = gamma_22 = rate,
/// g_12 = 0, antisymmetric detunings and equal drives.
inline MasterEqParams dark_state_params(double rate = 1.0, double detuning = 0.2,
                                        double drive = 0.7) {
  MasterEqParams p;
  p.n_qubits = 2;
  p.delta = {detuning, -detuning};
  p.omega = {drive, drive};
  p.g = RMatrix::Zero(2, 2);
  p.gamma = RMatrix::Constant(2, 2, rate);
  return p;
}

}  // namespace qtopo::testing
