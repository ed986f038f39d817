#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qtopo::pso {

struct PsoConfig {
  int n_particles = 200;
  int n_iters = 500;
  int n_restarts = 20;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  std::uint64_t seed = 1;
  std::vector<double> lower;  ///< per-parameter box
  std::vector<double> upper;

  void validate() const;
  std::size_t dimension() const { return lower.size(); }
};

struct PsoResult {
  std::vector<double> best_position;
  double best_value = 0.0;
  int best_restart = 0;
  /// Global-best value after every iteration, one row per restart.
  std::vector<std::vector<double>> history;
};

using Objective = std::function<double(std::span<const double>)>;

/// Global-best particle swarm maximizing `objective` over the box. Positions
/// are clamped to the box and velocities to its width. Each restart draws
/// from its own generator seeded by (seed, restart); the result is
/// deterministic for a given config.
PsoResult pso_optimize(const Objective& objective, const PsoConfig& config);

}  // namespace qtopo::pso
