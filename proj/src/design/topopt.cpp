#include "qtopo/design/topopt.hpp"

#include <algorithm>

#include "qtopo/core/lindblad.hpp"
#include "qtopo/core/metrics.hpp"
#include "qtopo/design/sensitivity.hpp"
#include "qtopo/error.hpp"

namespace qtopo::design {

void TOConfig::validate() const {
  if (!(delta_eps > 0.0 && delta_eps <= 0.01)) throw InvalidArgument("delta_eps must lie in (0, 0.01]");
  if (!(fidelity_goal > 0.0 && fidelity_goal <= 1.0)) throw InvalidArgument("fidelity_goal must lie in (0, 1]");
  if (!(eps_max >= 1.0)) throw InvalidArgument("eps_max must be at least 1");
  if (max_iters < 0) throw InvalidArgument("max_iters must be non-negative");
  if (max_backtracks < 0) throw InvalidArgument("max_backtracks must be non-negative");
  if (target.dim() == 0) throw InvalidArgument("target state missing");
  const auto n = static_cast<std::size_t>(target.n_qubits());
  if (delta.size() != n || omega.size() != n) throw InvalidArgument("need one detuning and one drive per emitter");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::GoalReached: return "goal";
    case Termination::MaxIters: return "max_iters";
    case Termination::Saturated: return "saturated";
    case Termination::Stalled: return "stalled";
  }
  return "unknown";
}

MasterEqParams design_params(const em::CouplingSet& c, const std::vector<double>& delta,
                              const std::vector<double>& omega) {
  MasterEqParams p;
  p.n_qubits = static_cast<int>(c.gamma.rows());
  p.delta = delta;
  p.omega = omega;
  p.g = c.g;
  p.gamma = c.gamma;
  p.validate();
  return p;
}

TopologyOptimizer::TopologyOptimizer(TOConfig config, em::PermittivityGrid seed, em::EmitterLayout layout)
    : config_(std::move(config)), map_(std::move(seed)), layout_(std::move(layout)) {
  config_.validate();
  map_.eps_max = config_.eps_max;
  map_.validate();
  layout_.validate(map_);
  if (layout_.size() != config_.target.n_qubits()) {
    throw InvalidArgument("emitter count does not match the target state");
  }
  frozen_.assign(map_.size(), 0);
  for (const auto& c : layout_.positions) frozen_[map_.index(c)] = 1;

  freespace_ref_ = em::vacuum_self_reference(map_, layout_);
  solver_ = std::make_unique<em::HelmholtzSolver>(map_, layout_.k0);
  refresh();
}

TopologyOptimizer::~TopologyOptimizer() = default;

void TopologyOptimizer::refresh() {
  fields_ = em::solve_all_emitters(*solver_, layout_);
  couplings_ = em::couplings_from_fields(fields_, layout_, freespace_ref_);
  params_ = design_params(couplings_, config_.delta, config_.omega);
  const double gamma = couplings_.purcell;
  current_.fidelity = steady_fidelity(params_, config_.target);
  current_.g12_over_gamma = params_.g(0, 1) / gamma;
  current_.gamma12_over_gamma = params_.gamma(0, 1) / gamma;
  current_.purcell = gamma;
}

void TopologyOptimizer::gradient_weights(RMatrix& w_re, RMatrix& w_im) const {
  const auto grad = fidelity_sensitivity(params_, config_.target);
  const double k0 = layout_.k0;
  const double s = k0 * k0 * config_.delta_eps * map_.h * map_.h / freespace_ref_;
  const auto n = grad.d_gamma.rows();
  w_re = RMatrix::Zero(n, n);
  w_im = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (i != j) w_re(i, j) = s * grad.d_g(i, j) / 2.0;
      w_im(i, j) = s * grad.d_gamma(i, j);
    }
  }
}

double TopologyOptimizer::cell_prediction(std::size_t cell_index, const RMatrix& w_re, const RMatrix& w_im) const {
  const auto n = w_re.rows();
  double df = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex ei = fields_[i].field[cell_index];
    for (Eigen::Index j = i; j < n; ++j) {
      const Complex p = ei * fields_[j].field[cell_index];
      df += w_re(i, j) * p.real() + w_im(i, j) * p.imag();
    }
  }
  return df;
}

double TopologyOptimizer::predicted_delta_f(em::GridCell cell) const {
  if (map_.in_pml(cell)) throw InvalidArgument("cell lies inside the PML");
  RMatrix w_re, w_im;
  gradient_weights(w_re, w_im);
  return cell_prediction(map_.index(cell), w_re, w_im);
}

std::optional<IterationRecord> TopologyOptimizer::step() {
  if (termination_) return std::nullopt;
  if (current_.fidelity >= config_.fidelity_goal) {
    termination_ = Termination::GoalReached;
    return std::nullopt;
  }
  if (current_.k >= config_.max_iters) {
    termination_ = Termination::MaxIters;
    return std::nullopt;
  }

  RMatrix w_re, w_im;
  gradient_weights(w_re, w_im);

  struct Candidate {
    std::size_t index;
    double df;
  };
  std::vector<Candidate> accepted;
  long blocked = 0;  // beneficial cells already at eps_max
  for (int iz = map_.pml_cells; iz < map_.nz - map_.pml_cells; ++iz) {
    for (int ix = map_.pml_cells; ix < map_.nx - map_.pml_cells; ++ix) {
      const std::size_t idx = map_.index(ix, iz);
      if (frozen_[idx]) continue;
      const double df = cell_prediction(idx, w_re, w_im);
      if (!(df > config_.accept_threshold)) continue;
      if (map_.eps[idx] >= config_.eps_max) {
        ++blocked;
        continue;
      }
      accepted.push_back({idx, df});
    }
  }

  if (accepted.empty()) {
    if (blocked > 0) {
      termination_ = Termination::Saturated;
      return std::nullopt;
    }
    if (++stalled_sweeps_ >= 3) termination_ = Termination::Stalled;
    return std::nullopt;
  }
  stalled_sweeps_ = 0;

  const IterationRecord before = current_;
  const std::vector<double> saved = map_.eps;
  int backtracks = 0;
  for (;;) {
    double predicted = 0.0;
    for (const auto& c : accepted) {
      map_.eps[c.index] = std::min(map_.eps[c.index] + config_.delta_eps, config_.eps_max);
      predicted += c.df;
    }
    solver_->refactor(map_);
    refresh();
    current_.k = before.k + 1;
    current_.accepted_cells = static_cast<long>(accepted.size());
    current_.predicted_dF = predicted;
    current_.backtracks = backtracks;
    if (current_.fidelity >= before.fidelity || backtracks >= config_.max_backtracks || accepted.size() < 2) break;
    // first-order step too long: keep the better half (stable, so ties stay in scan order)
    map_.eps = saved;
    std::stable_sort(accepted.begin(), accepted.end(),
                     [](const Candidate& a, const Candidate& b) { return a.df > b.df; });
    accepted.resize(accepted.size() / 2);
    std::sort(accepted.begin(), accepted.end(),
              [](const Candidate& a, const Candidate& b) { return a.index < b.index; });
    ++backtracks;
  }
  return current_;
}

DesignTrajectory run_topopt(const TOConfig& config, const em::PermittivityGrid& seed,
                            const em::EmitterLayout& layout) {
  TopologyOptimizer opt(config, seed, layout);
  DesignTrajectory traj;
  traj.records.push_back(opt.current());
  while (!opt.termination()) {
    if (auto rec = opt.step()) traj.records.push_back(*rec);
  }
  traj.reason = *opt.termination();
  traj.final_map = opt.map();
  return traj;
}

}  // namespace qtopo::design
