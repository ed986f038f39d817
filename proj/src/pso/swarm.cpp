#include "qtopo/pso/swarm.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "qtopo/error.hpp"

namespace qtopo::pso {

void PsoConfig::validate() const {
  if (n_particles <= 0 || n_iters <= 0 || n_restarts <= 0) throw InvalidArgument("PSO counts must be positive");
  if (lower.empty() || lower.size() != upper.size()) throw InvalidArgument("PSO bounds must be non-empty and paired");
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!(lower[d] < upper[d])) throw InvalidArgument("PSO bound " + std::to_string(d) + " is empty");
  }
}

namespace {

// std::uniform_real_distribution is implementation-defined; this is not.
class Uniform {
 public:
  Uniform(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    rng_.seed(seq);
  }
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

PsoResult pso_optimize(const Objective& objective, const PsoConfig& config) {
  config.validate();
  const std::size_t dim = config.dimension();
  const auto n = static_cast<std::size_t>(config.n_particles);
  std::vector<double> vmax(dim);
  for (std::size_t d = 0; d < dim; ++d) vmax[d] = config.upper[d] - config.lower[d];

  PsoResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.n_restarts; ++restart) {
    Uniform u(config.seed, static_cast<std::uint64_t>(restart));
    std::vector<std::vector<double>> x(n, std::vector<double>(dim)), v = x;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t d = 0; d < dim; ++d) {
        x[p][d] = u(config.lower[d], config.upper[d]);
        v[p][d] = u(-0.5 * vmax[d], 0.5 * vmax[d]);
      }
    }
    auto personal = x;
    std::vector<double> personal_value(n);
    std::size_t leader = 0;
    for (std::size_t p = 0; p < n; ++p) {
      personal_value[p] = objective(x[p]);
      if (personal_value[p] > personal_value[leader]) leader = p;
    }
    std::vector<double> global = personal[leader];
    double global_value = personal_value[leader];

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(config.n_iters));
    for (int it = 0; it < config.n_iters; ++it) {
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t d = 0; d < dim; ++d) {
          const double r1 = u();
          const double r2 = u();
          double vel = config.inertia * v[p][d] + config.cognitive * r1 * (personal[p][d] - x[p][d]) +
                       config.social * r2 * (global[d] - x[p][d]);
          vel = std::clamp(vel, -vmax[d], vmax[d]);
          v[p][d] = vel;
          x[p][d] = std::clamp(x[p][d] + vel, config.lower[d], config.upper[d]);
        }
        const double f = objective(x[p]);
        if (f > personal_value[p]) {
          personal_value[p] = f;
          personal[p] = x[p];
        }
      }
      // synchronous global-best update after the whole swarm moved
      for (std::size_t p = 0; p < n; ++p) {
        if (personal_value[p] > global_value) {
          global_value = personal_value[p];
          global = personal[p];
        }
      }
      history.push_back(global_value);
    }
    result.history.push_back(std::move(history));
    if (global_value > result.best_value) {
      result.best_value = global_value;
      result.best_position = global;
      result.best_restart = restart;
    }
  }
  return result;
}

}  // namespace qtopo::pso
