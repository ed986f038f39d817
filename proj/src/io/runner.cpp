#include "qtopo/io/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qtopo/core/cavity.hpp"
#include "qtopo/core/lindblad.hpp"
#include "qtopo/core/metrics.hpp"
#include "qtopo/core/states.hpp"
#include "qtopo/design/topopt.hpp"
#include "qtopo/em/couplings.hpp"
#include "qtopo/em/fdfd.hpp"
#include "qtopo/em/green.hpp"
#include "qtopo/em/grid_io.hpp"
#include "qtopo/error.hpp"
#include "qtopo/io/artifacts.hpp"
#include "qtopo/io/tomography.hpp"
#include "qtopo/pso/swarm.hpp"
#include "qtopo/pso/triple.hpp"

namespace qtopo::io {

namespace {

using em::format_double;

std::string num(double v) { return format_double(v); }

std::string key_values(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = csv_row({"metric", "value"});
  for (const auto& [k, v] : rows) out += csv_row({k, v});
  return out;
}

void add_energy(const RunConfig& c, std::vector<std::pair<std::string, std::string>>& rows, const std::string& name,
                double rate) {
  if (!c.units) return;
  rows.emplace_back(name + "_ueV", num(rate * gamma0_micro_ev(c.units->dipole_enm, c.units->wavelength_nm)));
}

std::vector<std::pair<std::string, std::string>> state_metrics(const DensityMatrix& rho, const StateVector& target) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"fidelity", num(fidelity(rho, target))}, {"purity", num(purity(rho))}, {"n_G", num(population(rho, 0))}};
  const int n = qubit_count(rho.dim());
  if (n == 2) rows.emplace_back("concurrence", num(concurrence(rho)));
  if (n == 3)
    for (int k = 0; k < 3; ++k)
      rows.emplace_back("concurrence_trace_q" + std::to_string(k + 1), num(concurrence(partial_trace(rho, k))));
  return rows;
}

void run_steady(const RunConfig& c, ArtifactSet& out) {
  const auto ss = steady_state(build_liouvillian(c.master_params()));
  auto rows = state_metrics(ss.rho, c.target_state());
  rows.emplace_back("residual", num(ss.residual));
  out.write("metrics.csv", key_values(rows));
}

void run_dynamics(const RunConfig& c, ArtifactSet& out, std::ostream& log) {
  const auto& d = *c.dynamics;
  const auto times = log_time_grid(d.t_min, d.t_max, d.points);
  const int n = c.n_emitters();
  const bool single_mode = d.model == DynamicsModel::SingleMode;

  Superoperator L;
  int n_max = 0;
  if (single_mode) {
    const auto& s = *c.single_mode;
    SingleModeParams p;
    p.mode_detuning = s.mode_detuning;
    p.mode_linewidth = s.mode_linewidth;
    p.couplings = s.couplings;
    p.gamma0 = s.gamma0;
    p.n_max = s.n_max;
    L = build_single_mode_liouvillian(p, c.drive->delta, c.drive->omega);
    n_max = s.n_max;
  } else {
    L = build_liouvillian(c.master_params());
  }
  // all emitters in |g>, cavity in vacuum
  CMatrix rho0 = CMatrix::Zero(L.dim(), L.dim());
  rho0(0, 0) = 1.0;
  log << "dynamics: " << times.size() << " samples, Hilbert dimension " << L.dim() << '\n';
  const auto states = evolve(L, DensityMatrix::unchecked(rho0), times);

  std::vector<std::string> head{"t"};
  if (n == 2) head.insert(head.end(), {"n_pp", "n_pm", "n_G"});
  else head.insert(head.end(), {"F", "n_G"});
  if (single_mode) head.push_back("n_a");
  std::string body = csv_row(head);
  const StateVector even = bell_state(Parity::Even), odd = bell_state(Parity::Odd);
  const StateVector target = c.target_state();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const DensityMatrix qubits = single_mode ? trace_out_mode(states[k], n, n_max) : states[k];
    std::vector<std::string> row{num(times[k])};
    if (n == 2) {
      row.push_back(num(fidelity(qubits, even)));
      row.push_back(num(fidelity(qubits, odd)));
    } else {
      row.push_back(num(fidelity(qubits, target)));
    }
    row.push_back(num(population(qubits, 0)));
    if (single_mode) row.push_back(num(mode_population(states[k], n, n_max)));
    body += csv_row(row);
  }
  out.write("transients.csv", body);
}

void run_gap(const RunConfig& c, ArtifactSet& out) {
  const auto gap = liouvillian_gap(build_liouvillian(c.master_params()));
  std::vector<std::pair<std::string, std::string>> rows{{"gap", num(gap.gap)}, {"tau", num(gap.tau)}};
  add_energy(c, rows, "gap", gap.gap);
  out.write("gap.csv", key_values(rows));
}

void run_green_validate(const RunConfig& c, ArtifactSet& out, std::ostream& log) {
  const auto grid = c.make_grid();
  const auto layout = c.make_layout(grid);
  em::HelmholtzSolver solver(grid, layout.k0);
  const auto fields = em::solve_all_emitters(solver, layout);
  const auto& f = fields[0];
  const em::GridCell src = layout.positions[0];

  std::string body = csv_row({"direction", "rho", "re_fdfd", "im_fdfd", "re_oracle", "im_oracle", "rel_err"});
  double worst = 0.0;
  auto sample = [&](const char* dir, int dx, int dz, int step) {
    const em::GridCell cell{src.ix + dx * step, src.iz + dz * step};
    if (cell.ix < 0 || cell.iz < 0 || cell.ix >= grid.nx || cell.iz >= grid.nz || grid.in_pml(cell)) return;
    const double rho = step * grid.h * std::hypot(dx, dz);
    if (rho < 0.5 - 1e-12 || rho > 3.0 + 1e-12) return;
    const Complex g = f.at(cell);
    const Complex o = em::freespace_green_2d(layout.k0, rho);
    const double err = std::abs(g - o) / std::abs(o);
    worst = std::max(worst, err);
    body += csv_row({dir, num(rho), num(g.real()), num(g.imag()), num(o.real()), num(o.imag()), num(err)});
  };
  const int reach = static_cast<int>(std::ceil(3.0 / grid.h)) + 1;
  for (int s = 1; s <= reach; ++s) sample("+x", 1, 0, s);
  for (int s = 1; s <= reach; ++s) sample("-z", 0, -1, s);
  for (int s = 1; s <= reach; ++s) sample("diag", 1, 1, s);
  out.write("green_validation.csv", body);

  std::vector<std::pair<std::string, std::string>> rows{{"max_rel_err", num(worst)},
                                                        {"threshold", num(0.02)},
                                                        {"pass", worst < 0.02 ? "true" : "false"},
                                                        {"self_rate", num(f.at(src).imag() / 0.25)}};
  if (layout.size() >= 2) {
    double recip = 0.0;
    for (int i = 0; i < layout.size(); ++i)
      for (int j = i + 1; j < layout.size(); ++j) {
        const Complex a = fields[i].at(layout.positions[j]);
        const Complex b = fields[j].at(layout.positions[i]);
        recip = std::max(recip, std::abs(a - b) / std::abs(a));
      }
    rows.emplace_back("reciprocity_err", num(recip));
  }
  log << "green-validate: max relative error " << worst << (worst < 0.02 ? " (pass)" : " (FAIL)") << '\n';
  out.write("green_summary.csv", key_values(rows));
}

std::string matrix_text(const RMatrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + num(m(i, j));
  }
  return s;
}

void run_pso(const RunConfig& c, ArtifactSet& out, std::ostream& log) {
  const auto config = c.pso_config();
  pso::WFidelityObjective f;
  log << "pso: " << config.n_particles << " particles x " << config.n_iters << " iterations x " << config.n_restarts
      << " restarts\n";
  const auto result = pso::pso_optimize([&](std::span<const double> x) { return f.search(x); }, config);
  const auto best = pso::from_search_coordinates(result.best_position);
  const auto params = pso::expand_params(best);
  const auto rho = steady_state(build_liouvillian(params)).rho;
  log << "pso: best F = " << result.best_value << " (restart " << result.best_restart << ")\n";

  std::string body = csv_row({"name", "value"});
  const auto values = best.to_array();
  for (std::size_t d = 0; d < values.size(); ++d)
    body += csv_row({pso::SymmetricTripleParams::names()[d], num(values[d])});
  body += csv_row({"objective", num(result.best_value)});
  for (const auto& [k, v] : state_metrics(rho, w_state())) body += csv_row({k, v});
  body += csv_row({"best_restart", std::to_string(result.best_restart)});
  out.write("best_params.csv", body);

  std::string hist = csv_row({"restart", "iter", "best"});
  for (std::size_t r = 0; r < result.history.size(); ++r)
    for (std::size_t k = 0; k < result.history[r].size(); ++k)
      hist += csv_row({std::to_string(r), std::to_string(k), num(result.history[r][k])});
  out.write("history.csv", hist);

  std::ostringstream ini;
  ini << "[drive]\ndelta = " << num(params.delta[0]) << ", " << num(params.delta[1]) << ", "
      << num(params.delta[2]) << "\nomega = " << num(params.omega[0]) << ", " << num(params.omega[1]) << ", "
      << num(params.omega[2]) << "\n\n[couplings]\ng = " << matrix_text(params.g)
      << "\ngamma = " << matrix_text(params.gamma) << "\n\n[target]\nstate = w\n";
  out.write("external_params.ini", ini.str());
}

void run_topopt(const RunConfig& c, ArtifactSet& out, std::ostream& log) {
  const auto grid = c.make_grid();
  const auto layout = c.make_layout(grid);
  design::TopologyOptimizer opt(c.to_config(), grid, layout);
  std::vector<design::IterationRecord> records{opt.current()};
  const auto t0 = std::chrono::steady_clock::now();
  auto report = [&](const design::IterationRecord& r) {
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log << "topopt k=" << r.k << " F=" << r.fidelity << " g12/gamma=" << r.g12_over_gamma
        << " gamma12/gamma=" << r.gamma12_over_gamma << " P=" << r.purcell << " cells=" << r.accepted_cells
        << " t=" << std::lround(t) << "s\n";
  };
  report(records.back());
  while (auto r = opt.step()) {
    records.push_back(*r);
    report(*r);
  }
  const auto reason = *opt.termination();

  std::string body = csv_row({"k", "F", "g12_over_gamma", "gamma12_over_gamma", "purcell", "accepted_cells",
                              "predicted_dF", "backtracks"});
  int agree = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    body += csv_row({std::to_string(r.k), num(r.fidelity), num(r.g12_over_gamma), num(r.gamma12_over_gamma),
                     num(r.purcell), std::to_string(r.accepted_cells), num(r.predicted_dF),
                     std::to_string(r.backtracks)});
    if (k > 0 && (r.fidelity - records[k - 1].fidelity > 0) == (r.predicted_dF > 0)) ++agree;
  }
  out.write("trajectory.csv", body);
  out.write_grid("final_map.grid", opt.map());

  const auto& last = records.back();
  const std::size_t steps = records.size() - 1;
  std::vector<std::pair<std::string, std::string>> rows{
      {"termination", design::to_string(reason)},
      {"iterations", std::to_string(steps)},
      {"fidelity", num(last.fidelity)},
      {"g12_over_gamma", num(last.g12_over_gamma)},
      {"gamma12_over_gamma", num(last.gamma12_over_gamma)},
      {"purcell", num(last.purcell)},
      {"sign_agreement", num(steps ? double(agree) / double(steps) : 1.0)}};
  out.write("summary.csv", key_values(rows));
  log << "topopt: " << design::to_string(reason) << " after " << steps << " sweeps, F = " << last.fidelity << '\n';
}

void run_tomography(const RunConfig& c, ArtifactSet& out) {
  const auto rho = steady_state(build_liouvillian(c.master_params())).rho;
  out.write("tomography.csv", tomography_csv(tomography_table(rho, c.tomography->basis)));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<double> log_time_grid(double t_min, double t_max, int points) {
  if (!(t_min > 0) || !(t_max > t_min) || points < 2) throw InvalidArgument("log_time_grid: invalid range");
  std::vector<double> t(points);
  const double a = std::log10(t_min), b = std::log10(t_max);
  for (int k = 0; k < points; ++k) t[k] = std::pow(10.0, a + (b - a) * k / (points - 1));
  t.front() = t_min;
  t.back() = t_max;
  return t;
}

std::vector<std::filesystem::path> run(const RunConfig& config, std::ostream& log) {
  const std::string echo = echo_config(config);
  ArtifactSet out(config.run.output, provenance_line(fnv1a64(echo), config.run.seed));
  out.write("config.ini", echo);
  switch (config.run.mode) {
    case Mode::Steady: run_steady(config, out); break;
    case Mode::Dynamics: run_dynamics(config, out, log); break;
    case Mode::Gap: run_gap(config, out); break;
    case Mode::GreenValidate: run_green_validate(config, out, log); break;
    case Mode::Pso: run_pso(config, out, log); break;
    case Mode::Topopt: run_topopt(config, out, log); break;
    case Mode::Tomography: run_tomography(config, out); break;
  }
  out.commit();
  return out.files();
}

int run_cli(const CliOptions& o, std::ostream& log, std::ostream& err) {
  try {
    const Mode mode = parse_mode(o.mode);
    RunConfig config = parse_config(read_file(o.config_path), mode);
    if (o.out) config.run.output = o.out->string();
    if (o.seed) config.run.seed = *o.seed;
    if (o.full_budget && config.run.mode == Mode::Pso) apply_full_budget(config);
    for (const auto& f : run(config, log)) log << "wrote " << f.string() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace qtopo::io
