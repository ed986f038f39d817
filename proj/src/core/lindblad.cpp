#include "qtopo/core/lindblad.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qtopo/core/conditioning.hpp"
#include "qtopo/error.hpp"

namespace qtopo {

CMatrix lowering_operator(int n_qubits, int k, Eigen::Index tail_dim) {
  if (k < 0 || k >= n_qubits) throw InvalidArgument("qubit index out of range");
  CMatrix sigma = CMatrix::Zero(2, 2);
  sigma(0, 1) = 1.0;  // |g><e|
  CMatrix op = CMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    CMatrix factor = q == k ? sigma : CMatrix::Identity(2, 2);
    op = Eigen::kroneckerProduct(op, factor).eval();
  }
  if (tail_dim > 1) op = Eigen::kroneckerProduct(op, CMatrix::Identity(tail_dim, tail_dim)).eval();
  return op;
}

Superoperator lindblad_superoperator(const CMatrix& hamiltonian, std::span<const CMatrix> ops,
                                     const RMatrix& rates) {
  const Eigen::Index n = hamiltonian.rows();
  if (hamiltonian.cols() != n) throw InvalidArgument("Hamiltonian must be square");
  const auto n_ops = static_cast<Eigen::Index>(ops.size());
  if (rates.rows() != n_ops || rates.cols() != n_ops) {
    throw InvalidArgument("rate matrix must be square with one row per jump operator");
  }
  const CMatrix id = CMatrix::Identity(n, n);
  const Complex i_unit(0.0, 1.0);

  CMatrix L = -i_unit * (Eigen::kroneckerProduct(id, hamiltonian).eval() -
                         Eigen::kroneckerProduct(hamiltonian.transpose(), id).eval());
  for (Eigen::Index i = 0; i < n_ops; ++i) {
    const CMatrix raise_i = ops[i].adjoint();
    for (Eigen::Index j = 0; j < n_ops; ++j) {
      const double r = rates(i, j);
      if (r == 0.0) continue;
      const CMatrix& lower_j = ops[j];
      const CMatrix num = raise_i * lower_j;
      L += r * (Eigen::kroneckerProduct(raise_i.transpose(), lower_j).eval() -
                0.5 * Eigen::kroneckerProduct(id, num).eval() -
                0.5 * Eigen::kroneckerProduct(num.transpose(), id).eval());
    }
  }
  return {std::move(L), n};
}

CMatrix emitter_hamiltonian(const MasterEqParams& p) {
  const Eigen::Index dim = Eigen::Index{1} << p.n_qubits;
  std::vector<CMatrix> sigma;
  for (int k = 0; k < p.n_qubits; ++k) sigma.push_back(lowering_operator(p.n_qubits, k));
  CMatrix H = CMatrix::Zero(dim, dim);
  for (int i = 0; i < p.n_qubits; ++i) {
    H += p.delta[i] * sigma[i].adjoint() * sigma[i];
    H += p.omega[i] * (sigma[i] + sigma[i].adjoint());
    for (int j = 0; j < p.n_qubits; ++j) {
      if (i != j) H += p.g(i, j) * sigma[i].adjoint() * sigma[j];
    }
  }
  return H;
}

Superoperator build_liouvillian(const MasterEqParams& p) {
  p.validate();
  std::vector<CMatrix> sigma;
  for (int k = 0; k < p.n_qubits; ++k) sigma.push_back(lowering_operator(p.n_qubits, k));
  return lindblad_superoperator(emitter_hamiltonian(p), sigma, p.gamma);
}

int null_space_dimension(const Superoperator& L, double tol) {
  Eigen::BDCSVD<CMatrix> svd(L.matrix());
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cutoff = tol * s[0];
  int count = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s[k] <= cutoff) ++count;
  }
  return count;
}

SteadyState steady_state(const Superoperator& L) {
  const Eigen::Index n = L.dim();
  const Eigen::Index n2 = n * n;
  CMatrix system = L.matrix();
  // Row 0 is the (0,0) population equation; the trace functional replaces it.
  system.row(0).setZero();
  for (Eigen::Index i = 0; i < n; ++i) system(0, i * (n + 1)) = 1.0;
  CVector rhs = CVector::Zero(n2);
  rhs[0] = 1.0;

  Eigen::PartialPivLU<CMatrix> lu(system);
  // A (near-)zero pivot or a tiny smallest singular value of the bordered
  // system signals a (nearly) degenerate null space of L.
  const RVector pivots = lu.matrixLU().diagonal().cwiseAbs();
  const bool tiny_pivot = !(pivots.minCoeff() > 1e-12 * pivots.maxCoeff());
  if (tiny_pivot || !(smallest_singular_value(lu) > kSteadyStateConditioning * system.norm())) {
    const int nullity = null_space_dimension(L);
    if (nullity > 1) {
      throw NumericalError("steady state is not unique: null space dimension " +
                           std::to_string(nullity));
    }
    throw NumericalError("steady-state linear system is singular or ill-conditioned");
  }
  const CVector x = lu.solve(rhs);
  if (!x.allFinite()) throw NumericalError("steady-state solve produced non-finite values");

  CMatrix rho = unvectorize(x, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = (L.matrix() * vectorize(rho)).norm();
  return {DensityMatrix::unchecked(std::move(rho)), residual};
}

std::vector<DensityMatrix> evolve(const Superoperator& L, const DensityMatrix& rho0,
                                  std::span<const double> times) {
  const Eigen::Index n = L.dim();
  if (rho0.dim() != n) throw InvalidArgument("initial state dimension does not match Liouvillian");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
      throw InvalidArgument("times must be non-negative and strictly increasing");
    }
  }

  // Round-off in exp(L dt) grows with ||L dt||; long intervals are split into
  // chunks of at most max_chunk and the chunk propagator is reused.
  const double l_norm = L.matrix().cwiseAbs().colwise().sum().maxCoeff();
  const double max_chunk = l_norm > 0.0 ? std::ldexp(1.0, 24) / l_norm
                                        : std::numeric_limits<double>::infinity();
  std::map<double, CMatrix> propagators;
  auto propagator = [&](double dt) -> const CMatrix& {
    auto it = propagators.find(dt);
    if (it == propagators.end()) {
      CMatrix generator = L.matrix() * dt;
      it = propagators.emplace(dt, generator.exp()).first;
      if (!it->second.allFinite()) {
        throw NumericalError("matrix exponential overflowed at dt = " + std::to_string(dt));
      }
    }
    return it->second;
  };

  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  CVector state = vectorize(rho0.entries());
  double t_prev = 0.0;
  for (double t : times) {
    const double dt = t - t_prev;
    if (dt > 0.0) {
      double remaining = dt;
      while (remaining > max_chunk) {
        state = propagator(max_chunk) * state;
        remaining -= max_chunk;
      }
      state = propagator(remaining) * state;
    }
    t_prev = t;
    if (dt == 0.0) {
      out.push_back(rho0);
      continue;
    }
    CMatrix rho = unvectorize(state, n);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (!rho.allFinite() || std::abs(rho.trace() - Complex(1.0)) > 1e-8) {
      throw NumericalError("trace not preserved during evolution at t = " + std::to_string(t));
    }
    out.push_back(DensityMatrix::unchecked(std::move(rho)));
  }
  return out;
}

LiouvillianGap liouvillian_gap(const Superoperator& L, double tol_zero) {
  Eigen::ComplexEigenSolver<CMatrix> es(L.matrix(), false);
  if (es.info() != Eigen::Success) throw NumericalError("Liouvillian eigen-solve failed");
  double slowest = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double re = es.eigenvalues()[k].real();
    if (re < -tol_zero && re > slowest) slowest = re;
  }
  if (!std::isfinite(slowest)) {
    throw NumericalError("all Liouvillian eigenvalues are zero within tolerance");
  }
  return {-slowest, -1.0 / slowest};
}

}  // namespace qtopo
