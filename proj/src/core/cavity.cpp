#include "qtopo/core/cavity.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "qtopo/core/lindblad.hpp"
#include "qtopo/error.hpp"

namespace qtopo {

double lorentzian_spectral_density(const SingleModeParams& p, int i, int j, double omega) {
  p.validate();
  const int n = static_cast<int>(p.couplings.size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("emitter index out of range");
  const double half_width = 0.5 * p.mode_linewidth;
  const double offset = omega - p.mode_detuning;
  return p.couplings[i] * p.couplings[j] / std::numbers::pi * half_width /
         (offset * offset + half_width * half_width);
}

Superoperator build_single_mode_liouvillian(const SingleModeParams& p,
                                            std::span<const double> detunings,
                                            std::span<const double> drives) {
  p.validate();
  const int n_qubits = static_cast<int>(p.couplings.size());
  if (detunings.size() != p.couplings.size() || drives.size() != p.couplings.size()) {
    throw InvalidArgument("one detuning and one drive per emitter required");
  }
  const Eigen::Index levels = p.n_max + 1;
  const Eigen::Index qubit_dim = Eigen::Index{1} << n_qubits;

  CMatrix a_mode = CMatrix::Zero(levels, levels);
  for (Eigen::Index k = 1; k < levels; ++k) a_mode(k - 1, k) = std::sqrt(static_cast<double>(k));
  const CMatrix a = Eigen::kroneckerProduct(CMatrix::Identity(qubit_dim, qubit_dim), a_mode).eval();

  std::vector<CMatrix> ops;
  ops.push_back(a);
  for (int k = 0; k < n_qubits; ++k) ops.push_back(lowering_operator(n_qubits, k, levels));

  CMatrix H = p.mode_detuning * a.adjoint() * a;
  for (int k = 0; k < n_qubits; ++k) {
    const CMatrix& s = ops[k + 1];
    H += detunings[k] * s.adjoint() * s;
    const CMatrix exchange = p.couplings[k] * s.adjoint() * a;
    H += exchange + exchange.adjoint();
    H += drives[k] * (s + s.adjoint());
  }

  RMatrix rates = RMatrix::Zero(n_qubits + 1, n_qubits + 1);
  rates(0, 0) = p.mode_linewidth;
  for (int k = 0; k < n_qubits; ++k) rates(k + 1, k + 1) = p.gamma0;
  return lindblad_superoperator(H, ops, rates);
}

MasterEqParams adiabatic_elimination(const SingleModeParams& p, std::span<const double> detunings,
                                     std::span<const double> drives) {
  p.validate();
  const int n = static_cast<int>(p.couplings.size());
  if (detunings.size() != p.couplings.size() || drives.size() != p.couplings.size()) {
    throw InvalidArgument("one detuning and one drive per emitter required");
  }
  const double D = p.mode_detuning;
  const double denom = D * D + 0.25 * p.mode_linewidth * p.mode_linewidth;
  MasterEqParams out;
  out.n_qubits = n;
  out.delta.assign(detunings.begin(), detunings.end());
  out.omega.assign(drives.begin(), drives.end());
  out.g = RMatrix::Zero(n, n);
  out.gamma = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double gg = p.couplings[i] * p.couplings[j];
      out.gamma(i, j) = gg * p.mode_linewidth / denom + (i == j ? p.gamma0 : 0.0);
      if (i == j) {
        out.delta[i] -= gg * D / denom;
      } else {
        out.g(i, j) = -gg * D / denom;
      }
    }
  }
  return out;
}

DensityMatrix trace_out_mode(const DensityMatrix& rho, int n_qubits, int n_max) {
  const Eigen::Index levels = n_max + 1;
  const Eigen::Index qdim = Eigen::Index{1} << n_qubits;
  if (rho.dim() != qdim * levels) throw InvalidArgument("state dimension does not match qubits x mode");
  CMatrix out = CMatrix::Zero(qdim, qdim);
  for (Eigen::Index a = 0; a < qdim; ++a) {
    for (Eigen::Index b = 0; b < qdim; ++b) {
      Complex s = 0.0;
      for (Eigen::Index m = 0; m < levels; ++m) s += rho(a * levels + m, b * levels + m);
      out(a, b) = s;
    }
  }
  return DensityMatrix::unchecked(std::move(out));
}

double mode_population(const DensityMatrix& rho, int n_qubits, int n_max) {
  const Eigen::Index levels = n_max + 1;
  const Eigen::Index qdim = Eigen::Index{1} << n_qubits;
  if (rho.dim() != qdim * levels) throw InvalidArgument("state dimension does not match qubits x mode");
  double n = 0.0;
  for (Eigen::Index a = 0; a < qdim; ++a) {
    for (Eigen::Index m = 1; m < levels; ++m) n += static_cast<double>(m) * rho(a * levels + m, a * levels + m).real();
  }
  return n;
}

double truncation_population(const DensityMatrix& rho, int n_qubits, int n_max) {
  const Eigen::Index levels = n_max + 1;
  const Eigen::Index qdim = Eigen::Index{1} << n_qubits;
  if (rho.dim() != qdim * levels) throw InvalidArgument("state dimension does not match qubits x mode");
  double p = 0.0;
  for (Eigen::Index a = 0; a < qdim; ++a) p += rho(a * levels + n_max, a * levels + n_max).real();
  return p;
}

}  // namespace qtopo
