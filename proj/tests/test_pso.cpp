#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "qtopo/core/lindblad.hpp"
#include "qtopo/core/metrics.hpp"
#include "qtopo/core/states.hpp"
#include "qtopo/error.hpp"
#include "qtopo/pso/swarm.hpp"
#include "qtopo/pso/triple.hpp"

using namespace qtopo;
using namespace qtopo::pso;

namespace {

double neg_sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return -s;
}

PsoConfig box(int dim, double half_width) {
  PsoConfig c;
  c.lower.assign(dim, -half_width);
  c.upper.assign(dim, half_width);
  return c;
}

SymmetricTripleParams reference_external() {
  SymmetricTripleParams p;
  p.delta1 = 0.55;
  p.delta2 = -0.3;
  p.omega1 = 0.33;
  p.omega2 = -0.73;
  return p;
}

// Swaps the first and last qubit of a three-qubit register.
CMatrix swap_13() {
  CMatrix P = CMatrix::Zero(8, 8);
  for (int s = 0; s < 8; ++s) {
    const int b0 = (s >> 2) & 1, b1 = (s >> 1) & 1, b2 = s & 1;
    P((b2 << 2) | (b1 << 1) | b0, s) = 1.0;
  }
  return P;
}

SymmetricTripleParams random_feasible(std::mt19937_64& rng, const WFidelityObjective& f) {
  const auto cfg = default_triple_config();
  for (;;) {
    std::array<double, 10> v{};
    for (std::size_t d = 0; d < v.size(); ++d) {
      std::uniform_real_distribution<double> u(cfg.lower[d], cfg.upper[d]);
      v[d] = u(rng);
    }
    const auto p = from_search_coordinates(v);
    if (f(p.to_array()) > 0.0) return p;
  }
}

}  // namespace

TEST_CASE("PSO finds the sphere optimum in 10-D") {
  auto c = box(10, 5.0);
  const auto r = pso_optimize(neg_sphere, c);
  double norm = 0.0;
  for (double x : r.best_position) norm += x * x;
  CHECK(std::sqrt(norm) < 1e-3);
  CHECK(r.best_value <= 0.0);
  CHECK(r.history.size() == 20);
}

TEST_CASE("PSO is deterministic and its history never decreases") {
  auto c = box(4, 3.0);
  c.n_particles = 20;
  c.n_iters = 50;
  c.n_restarts = 3;
  auto shifted = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) s += std::cos(3 * x[d]) - (x[d] - 0.5) * (x[d] - 0.5);
    return s;
  };
  const auto a = pso_optimize(shifted, c);
  const auto b = pso_optimize(shifted, c);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_position == b.best_position);
  CHECK(a.history == b.history);
  for (const auto& h : a.history) {
    REQUIRE(h.size() == 50);
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] >= h[k - 1]);
  }
  c.seed = 2;
  CHECK(pso_optimize(shifted, c).history != a.history);
  for (std::size_t d = 0; d < a.best_position.size(); ++d) {
    CHECK(a.best_position[d] >= c.lower[d]);
    CHECK(a.best_position[d] <= c.upper[d]);
  }
}

TEST_CASE("PSO configuration validation") {
  auto c = box(2, 1.0);
  c.n_particles = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = box(2, 1.0);
  c.upper[1] = c.lower[1];
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = box(2, 1.0);
  c.upper.pop_back();
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  CHECK_THROWS_AS(box(0, 1.0).validate(), InvalidArgument);
}

TEST_CASE("expanded parameters carry the 1 <-> 3 symmetry") {
  SymmetricTripleParams p = reference_external();
  p.gamma1 = 1.2;
  p.gamma2 = 0.8;
  p.gamma12 = 0.4;
  p.gamma13 = -0.3;
  p.g12 = 0.25;
  p.g13 = -0.1;
  const auto m = expand_params(p);
  CHECK(m.gamma(0, 1) == 0.4);
  CHECK(m.gamma(1, 2) == 0.4);
  CHECK(m.gamma(2, 1) == 0.4);
  CHECK(m.gamma(0, 2) == -0.3);
  CHECK(m.gamma(2, 2) == 1.2);
  CHECK(m.g(0, 1) == 0.25);
  CHECK(m.g(1, 2) == 0.25);
  CHECK(m.g(0, 2) == -0.1);
  CHECK(m.delta == std::vector<double>{0.55, -0.3, 0.55});
  CHECK(m.omega == std::vector<double>{0.33, -0.73, 0.33});

  const auto back = SymmetricTripleParams::from_array(p.to_array());
  CHECK(back.to_array() == p.to_array());
  CHECK_THROWS_AS(SymmetricTripleParams::from_array(std::vector<double>(9, 0.0)), InvalidArgument);
}

TEST_CASE("constraint violations are rejected and score zero") {
  SymmetricTripleParams p = reference_external();
  p.g12 = 0.2;
  p.g13 = 0.1;  // same sign
  CHECK_FALSE(p.signs_ok());
  CHECK_THROWS_AS(expand_params(p), InvalidArgument);
  CHECK(objective_w_fidelity(p) == 0.0);
  CHECK(WFidelityObjective{}(p.to_array()) == 0.0);

  p.g13 = -0.1;
  p.gamma12 = 2.0;  // |gamma_12| > sqrt(gamma_1 gamma_2)
  p.gamma13 = -0.1;
  CHECK(p.signs_ok());
  CHECK_THROWS_AS(expand_params(p), InvalidArgument);
  CHECK(objective_w_fidelity(p) == 0.0);
  CHECK(WFidelityObjective{}(p.to_array()) == 0.0);
}

TEST_CASE("undriven uncoupled emitters decay to |ggg>") {
  SymmetricTripleParams p;
  CHECK(objective_w_fidelity(p) == 0.0);
  CHECK(WFidelityObjective{}(p.to_array()) == 0.0);
  const auto rho = steady_state(build_liouvillian(expand_params(p))).rho;
  CHECK(population(rho, 0) == doctest::Approx(1.0));
}

TEST_CASE("fast objective agrees with the full steady-state path") {
  std::mt19937_64 rng(17);
  WFidelityObjective fast;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_feasible(rng, fast);
    CHECK(fast(p.to_array()) == doctest::Approx(objective_w_fidelity(p)).epsilon(1e-10));
  }
}

TEST_CASE("objective is invariant under relabeling emitters 1 and 3") {
  std::mt19937_64 rng(23);
  WFidelityObjective fast;
  const CMatrix P = swap_13();
  const CMatrix S = Eigen::kroneckerProduct(P.conjugate(), P).eval();  // vec(P X P^dag)
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_feasible(rng, fast);
    const auto L = build_liouvillian(expand_params(p)).matrix();
    CHECK((S * L * S.adjoint() - L).norm() < 1e-12 * L.norm());
    const auto rho = steady_state(build_liouvillian(expand_params(p))).rho;
    CHECK((P * rho.entries() * P.adjoint() - rho.entries()).norm() < 1e-10);
  }
  CHECK((P * w_state().amplitudes() - w_state().amplitudes()).norm() < 1e-15);
}

TEST_CASE("the reference drive set has a basin with F > 0.5") {
  // coarse scan over the internal parameters with the external ones fixed
  WFidelityObjective f;
  double best = 0.0;
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      for (int i = -6; i <= 6; ++i)
        for (int j = -6; j <= 6; ++j)
          for (int k = -6; k <= 6; ++k)
            for (int l = -6; l <= 6; ++l) {
              const std::array<double, 10> v{double(a), double(b), 0.5 * i, 0.5 * j, 0.5 * k, 0.5 * l,
                                             0.55,      -0.3,      0.33,    -0.73};
              best = std::max(best, f(v));
            }
  MESSAGE("best coarse-grid fidelity " << best);
  CHECK(best > 0.5);
}

TEST_CASE("search coordinates cover exactly the PSD cone") {
  std::mt19937_64 rng(29);
  const auto cfg = default_triple_config();
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 10> x{};
    for (std::size_t d = 0; d < x.size(); ++d) {
      std::uniform_real_distribution<double> u(cfg.lower[d], cfg.upper[d]);
      x[d] = u(rng);
    }
    if (trial % 4 == 0) x[3] = 1.0;  // boundary face
    if (trial % 4 == 1) x[2] = 1.0;
    const auto p = from_search_coordinates(x);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(expand_params(SymmetricTripleParams{p.gamma1, p.gamma2, p.gamma12,
                                                                                  p.gamma13, 0.0, 0.0})
                                                  .gamma);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    CHECK(-p.gamma12 * p.gamma13 >= 0.0);
    const auto back = to_search_coordinates(p);
    for (std::size_t d = 0; d < x.size(); ++d) CHECK(back[d] == doctest::Approx(x[d]).epsilon(1e-12));
  }
  // rank-one dissipation sits on the boundary: gamma = v v^T with v = (1, -2, 1)
  SymmetricTripleParams rank_one{1.0, 4.0, -2.0, 1.0};
  const auto x = to_search_coordinates(rank_one);
  CHECK(x[2] == doctest::Approx(1.0));
  CHECK(x[3] == doctest::Approx(1.0));
}

TEST_CASE("a short W-state swarm returns a feasible optimum") {
  auto c = default_triple_config();
  c.n_particles = 30;
  c.n_iters = 60;
  c.n_restarts = 2;
  WFidelityObjective f;
  const auto r = pso_optimize([&](std::span<const double> x) { return f.search(x); }, c);
  const auto p = from_search_coordinates(r.best_position);
  CHECK(p.signs_ok());
  CHECK_NOTHROW(expand_params(p));
  CHECK(r.best_value > 0.3);
  CHECK(objective_w_fidelity(p) == doctest::Approx(r.best_value).epsilon(1e-10));
}
