#include "qtopo/pso/triple.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qtopo/core/conditioning.hpp"
#include "qtopo/core/lindblad.hpp"
#include "qtopo/core/metrics.hpp"
#include "qtopo/core/states.hpp"
#include "qtopo/error.hpp"

namespace qtopo::pso {

std::array<double, SymmetricTripleParams::size> SymmetricTripleParams::to_array() const {
  return {gamma1, gamma2, gamma12, gamma13, g12, g13, delta1, delta2, omega1, omega2};
}

SymmetricTripleParams SymmetricTripleParams::from_array(std::span<const double> v) {
  if (v.size() != size) throw InvalidArgument("expected 10 symmetric-triple parameters");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
}

const std::array<const char*, SymmetricTripleParams::size>& SymmetricTripleParams::names() {
  static const std::array<const char*, size> n{"gamma1", "gamma2", "gamma12", "gamma13", "g12",
                                               "g13",    "delta1", "delta2",  "omega1",  "omega2"};
  return n;
}

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

RMatrix triple_gamma(const SymmetricTripleParams& p) {
  RMatrix gamma(3, 3);
  gamma << p.gamma1, p.gamma12, p.gamma13,
           p.gamma12, p.gamma2, p.gamma12,
           p.gamma13, p.gamma12, p.gamma1;
  return gamma;
}

bool feasible(const SymmetricTripleParams& p) {
  if (!p.signs_ok() || !(p.gamma1 > 0.0) || !(p.gamma2 > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<RMatrix> es;
  es.computeDirect(triple_gamma(p), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10;
}

}  // namespace

bool SymmetricTripleParams::signs_ok() const {
  return sign(g12) == -sign(g13) && sign(gamma12) == -sign(gamma13);
}

MasterEqParams expand_params(const SymmetricTripleParams& p) {
  if (!p.signs_ok()) throw InvalidArgument("sign constraints violated: need sign(g12) = -sign(g13) and "
                                           "sign(gamma12) = -sign(gamma13)");
  MasterEqParams out;
  out.n_qubits = 3;
  out.delta = {p.delta1, p.delta2, p.delta1};
  out.omega = {p.omega1, p.omega2, p.omega1};
  out.g = RMatrix::Zero(3, 3);
  out.g(0, 1) = out.g(1, 0) = out.g(1, 2) = out.g(2, 1) = p.g12;
  out.g(0, 2) = out.g(2, 0) = p.g13;
  out.gamma = triple_gamma(p);
  out.validate();
  return out;
}

double objective_w_fidelity(const SymmetricTripleParams& p) {
  try {
    // the DensityMatrix constructor rejects non-physical steady states
    const DensityMatrix rho(steady_state(build_liouvillian(expand_params(p))).rho.entries());
    return fidelity(rho, w_state());
  } catch (const std::exception&) {
    return 0.0;
  }
}

namespace {

// Real coordinates of an 8x8 Hermitian matrix: rho_ii, then Re and Im of
// rho_ij for i < j. `to_vec` maps them to the column-stacked vector and
// `from_vec` extracts them from a Hermitian one (complex-linear, so the
// superoperator conjugates to a real matrix).
constexpr Eigen::Index kDim = 8;
constexpr Eigen::Index kPairs = kDim * (kDim - 1) / 2;

void hermitian_coordinates(CMatrix& to_vec, CMatrix& from_vec) {
  const Eigen::Index n2 = kDim * kDim;
  to_vec = CMatrix::Zero(n2, n2);
  from_vec = CMatrix::Zero(n2, n2);
  const Complex i_unit(0.0, 1.0);
  for (Eigen::Index i = 0; i < kDim; ++i) {
    to_vec(i * (kDim + 1), i) = 1.0;
    from_vec(i, i * (kDim + 1)) = 1.0;
  }
  Eigen::Index pair = 0;
  for (Eigen::Index i = 0; i < kDim; ++i) {
    for (Eigen::Index j = i + 1; j < kDim; ++j, ++pair) {
      const Eigen::Index ij = j * kDim + i;  // column stacking: (i, j) -> i + j n
      const Eigen::Index ji = i * kDim + j;
      const Eigen::Index re = kDim + pair;
      const Eigen::Index im = kDim + kPairs + pair;
      to_vec(ij, re) = 1.0;
      to_vec(ji, re) = 1.0;
      to_vec(ij, im) = i_unit;
      to_vec(ji, im) = -i_unit;
      from_vec(re, ij) = 0.5;
      from_vec(re, ji) = 0.5;
      from_vec(im, ij) = -0.5 * i_unit;
      from_vec(im, ji) = 0.5 * i_unit;
    }
  }
}

}  // namespace

WFidelityObjective::WFidelityObjective() {
  std::vector<CMatrix> sigma;
  for (int k = 0; k < 3; ++k) sigma.push_back(lowering_operator(3, k));
  CMatrix to_vec, from_vec;
  hermitian_coordinates(to_vec, from_vec);
  for (std::size_t k = 0; k < SymmetricTripleParams::size; ++k) {
    std::array<double, SymmetricTripleParams::size> unit{};
    unit[k] = 1.0;
    const auto p = SymmetricTripleParams::from_array(unit);
    MasterEqParams m;
    m.n_qubits = 3;
    m.delta = {p.delta1, p.delta2, p.delta1};
    m.omega = {p.omega1, p.omega2, p.omega1};
    m.g = RMatrix::Zero(3, 3);
    m.g(0, 1) = m.g(1, 0) = m.g(1, 2) = m.g(2, 1) = p.g12;
    m.g(0, 2) = m.g(2, 0) = p.g13;
    // the dissipator is linear in the rate matrix, PSD or not
    const CMatrix L = lindblad_superoperator(emitter_hamiltonian(m), sigma, triple_gamma(p)).matrix();
    basis_[k] = (from_vec * L * to_vec).real();
  }
  // <W|rho|W> as a linear functional of the coordinates
  const CVector w = w_state().amplitudes();
  weights_ = RVector::Zero(kDim * kDim);
  Eigen::Index pair = 0;
  for (Eigen::Index i = 0; i < kDim; ++i) {
    weights_[i] = std::norm(w[i]);
    for (Eigen::Index j = i + 1; j < kDim; ++j, ++pair) {
      const Complex c = std::conj(w[i]) * w[j];  // coefficient of rho_ij; rho_ji enters conjugated
      weights_[kDim + pair] = 2.0 * c.real();
      weights_[kDim + kPairs + pair] = -2.0 * c.imag();
    }
  }
}

double WFidelityObjective::operator()(std::span<const double> v) const {
  const auto p = SymmetricTripleParams::from_array(v);
  if (!feasible(p)) return 0.0;
  RMatrix system = RMatrix::Zero(kDim * kDim, kDim * kDim);
  for (std::size_t k = 0; k < SymmetricTripleParams::size; ++k) {
    if (v[k] != 0.0) system.noalias() += v[k] * basis_[k];
  }
  // the (0,0) population equation is replaced by the trace functional
  system.row(0).setZero();
  system.row(0).head(kDim).setOnes();
  Eigen::PartialPivLU<RMatrix> lu(system);
  const RVector pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.minCoeff() > 1e-12 * pivots.maxCoeff())) return 0.0;
  if (!(smallest_singular_value(lu) > kSteadyStateConditioning * system.norm())) return 0.0;
  RVector rhs = RVector::Zero(kDim * kDim);
  rhs[0] = 1.0;
  const RVector y = lu.solve(rhs);
  if (!y.allFinite()) return 0.0;
  const double trace = y.head(kDim).sum();
  // the steady state must be a density matrix
  CMatrix rho(kDim, kDim);
  Eigen::Index pair = 0;
  for (Eigen::Index i = 0; i < kDim; ++i) {
    rho(i, i) = y[i] / trace;
    for (Eigen::Index j = i + 1; j < kDim; ++j, ++pair) {
      rho(i, j) = Complex(y[kDim + pair], y[kDim + kPairs + pair]) / trace;
      rho(j, i) = std::conj(rho(i, j));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() >= -1e-8)) return 0.0;
  const double f = weights_.dot(y) / trace;
  if (!(f >= -1e-10 && f <= 1.0 + 1e-10)) return 0.0;
  return std::clamp(f, 0.0, 1.0);
}

double WFidelityObjective::search(std::span<const double> x) const {
  return (*this)(from_search_coordinates(x).to_array());
}

SymmetricTripleParams from_search_coordinates(std::span<const double> x) {
  auto p = SymmetricTripleParams::from_array(x);
  const double s = x[2];
  const double t = x[3];
  p.gamma13 = s * p.gamma1;
  const double bound = std::sqrt(std::max(0.0, (p.gamma1 + p.gamma13) * p.gamma2 / 2.0));
  p.gamma12 = (s >= 0.0 ? -1.0 : 1.0) * t * bound;
  return p;
}

std::array<double, SymmetricTripleParams::size> to_search_coordinates(const SymmetricTripleParams& p) {
  if (!(p.gamma1 > 0.0)) throw InvalidArgument("gamma1 must be positive");
  auto x = p.to_array();
  x[2] = p.gamma13 / p.gamma1;
  const double bound = std::sqrt(std::max(0.0, (p.gamma1 + p.gamma13) * p.gamma2 / 2.0));
  x[3] = bound > 0.0 ? std::abs(p.gamma12) / bound : 0.0;
  return x;
}

PsoConfig default_triple_config() {
  PsoConfig c;
  c.lower = {0.05, 0.05, -1.0, 0.0, -3.0, -3.0, -2.0, -2.0, 1e-6, -2.0};
  c.upper = {5.0, 5.0, 1.0, 1.0, 3.0, 3.0, 2.0, 2.0, 2.0, 2.0};
  return c;
}

}  // namespace qtopo::pso
