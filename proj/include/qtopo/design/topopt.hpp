#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtopo/core/types.hpp"
#include "qtopo/em/couplings.hpp"
#include "qtopo/em/fdfd.hpp"
#include "qtopo/em/grid.hpp"

namespace qtopo::design {

struct TOConfig {
  StateVector target;
  double delta_eps = 0.003;
  double eps_max = 9.0;
  std::vector<double> delta;  ///< external detunings, gamma_0 units
  std::vector<double> omega;  ///< external drives, gamma_0 units
  int max_iters = 100;
  double fidelity_goal = 0.95;
  double accept_threshold = 0.0;  ///< minimum predicted dF per cell
  /// When a sweep lowers F, it is undone and retried with the better half of
  /// the accepted cells (by predicted dF), at most this many times.
  int max_backtracks = 6;

  void validate() const;
};

/// One row of the design trajectory. k = 0 is the seed map.
struct IterationRecord {
  int k = 0;
  double fidelity = 0.0;
  double g12_over_gamma = 0.0;
  double gamma12_over_gamma = 0.0;
  double purcell = 0.0;
  long accepted_cells = 0;
  double predicted_dF = 0.0;  ///< summed first-order prediction of the accepted cells
  int backtracks = 0;         ///< halvings needed before the sweep was kept
};

enum class Termination { GoalReached, MaxIters, Saturated, Stalled };

std::string to_string(Termination t);

struct DesignTrajectory {
  std::vector<IterationRecord> records;
  em::PermittivityGrid final_map;
  Termination reason = Termination::MaxIters;
};

/// Increment-only topology optimization: every sweep ranks all design cells
/// (outside the PML, off the emitters, below eps_max) by the first-order
/// change of the steady-state fidelity, raises the beneficial ones by
/// delta_eps and re-solves the fields and the steady state.
class TopologyOptimizer {
 public:
  TopologyOptimizer(TOConfig config, em::PermittivityGrid seed, em::EmitterLayout layout);
  ~TopologyOptimizer();
  TopologyOptimizer(const TopologyOptimizer&) = delete;
  TopologyOptimizer& operator=(const TopologyOptimizer&) = delete;

  /// One sweep. Returns the new record, or nothing when the loop terminates
  /// (reason available from termination()).
  std::optional<IterationRecord> step();

  const IterationRecord& current() const { return current_; }
  const em::PermittivityGrid& map() const { return map_; }
  const em::CouplingSet& couplings() const { return couplings_; }
  const MasterEqParams& params() const { return params_; }
  std::optional<Termination> termination() const { return termination_; }
  double freespace_ref() const { return freespace_ref_; }

  /// First-order dF of raising `cell` by delta_eps at the current state.
  double predicted_delta_f(em::GridCell cell) const;

 private:
  void refresh();
  double cell_prediction(std::size_t cell_index, const RMatrix& w_re, const RMatrix& w_im) const;
  void gradient_weights(RMatrix& w_re, RMatrix& w_im) const;

  TOConfig config_;
  em::PermittivityGrid map_;
  em::EmitterLayout layout_;
  double freespace_ref_ = 0.0;
  std::unique_ptr<em::HelmholtzSolver> solver_;
  std::vector<em::FieldSolution> fields_;
  em::CouplingSet couplings_;
  MasterEqParams params_;
  IterationRecord current_;
  int stalled_sweeps_ = 0;
  std::optional<Termination> termination_;
  std::vector<char> frozen_;  ///< emitter cells are never modified
};

/// Runs sweeps until the goal, max_iters, eps_max saturation of every
/// beneficial cell, or 3 consecutive sweeps without accepted cells.
DesignTrajectory run_topopt(const TOConfig& config, const em::PermittivityGrid& seed,
                            const em::EmitterLayout& layout);

/// Master-equation parameters from couplings plus the external drive set.
MasterEqParams design_params(const em::CouplingSet& c, const std::vector<double>& delta,
                              const std::vector<double>& omega);

}  // namespace qtopo::design
