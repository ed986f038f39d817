// Acceptance checks, one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (all when none given)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qtopo/core/cavity.hpp"
#include "qtopo/core/lindblad.hpp"
#include "qtopo/core/metrics.hpp"
#include "qtopo/core/states.hpp"
#include "qtopo/design/sensitivity.hpp"
#include "qtopo/em/couplings.hpp"
#include "qtopo/em/fdfd.hpp"
#include "qtopo/io/config.hpp"
#include "qtopo/io/runner.hpp"

using namespace qtopo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path work_dir() {
  static const fs::path dir = fs::temp_directory_path() / "qtopo_acceptance";
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// metric,value rows after the provenance and header lines
std::map<std::string, std::string> read_metrics(const fs::path& p) {
  std::map<std::string, std::string> m;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto c = line.find(',');
    if (c != std::string::npos) m[line.substr(0, c)] = line.substr(c + 1);
  }
  return m;
}

std::map<std::string, std::string> read_files(const std::vector<fs::path>& files) {
  std::map<std::string, std::string> out;
  for (const auto& f : files) out[f.filename().string()] = slurp(f);
  return out;
}

MasterEqParams dark_pair() {
  MasterEqParams p;
  p.n_qubits = 2;
  p.delta = {0.2, -0.2};
  p.omega = {0.7, 0.7};
  p.g = RMatrix::Zero(2, 2);
  p.gamma = RMatrix::Ones(2, 2);
  return p;
}

const char* kPsoConfig = R"([run]
mode = pso
seed = 1
[pso]
particles = 200
iters = 500
restarts = 20
)";

const char* kTopoptConfig = R"([run]
mode = topopt
[drive]
delta = 0.2, -0.2
omega = 0.7, 0.7
[target]
state = bell-odd
[grid]
extent_x = 8
extent_z = 12
h = 0.025
eps_max = 9
[layout]
emitters = 2
separation = 1
[topopt]
delta_eps = 0.003
max_iters = 500
fidelity_goal = 0.95
max_backtracks = 6
)";

std::vector<fs::path> run_mode(const char* text, const std::string& name) {
  auto config = io::parse_config(text);
  config.run.output = (work_dir() / name).string();
  fs::remove_all(config.run.output);
  std::ostringstream log;
  return io::run(config, log);
}

// Cached first runs so that criterion 10 can repeat them.
std::map<std::string, std::string> g_pso_files, g_topopt_files;

Outcome criterion1() {
  const auto w = DensityMatrix::pure(w_state());
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(concurrence(partial_trace(w, k)) - 2.0 / 3.0));
  return {worst <= 1e-10, "max |C - 2/3| = " + fmt("%.2e", worst)};
}

Outcome criterion2() {
  double worst = 0.0;
  for (auto parity : {Parity::Even, Parity::Odd})
    worst = std::max(worst, std::abs(concurrence(DensityMatrix::pure(bell_state(parity))) - 1.0));
  return {worst <= 1e-10, "max |C - 1| = " + fmt("%.2e", worst)};
}

Outcome criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = run_mode(kPsoConfig, "pso");
  const double t = seconds_since(t0);
  g_pso_files = read_files(files);
  auto m = read_metrics(work_dir() / "pso" / "best_params.csv");
  const double f = std::stod(m.at("fidelity"));
  const double p = std::stod(m.at("purity"));
  return {f >= 0.89 && p >= 0.98 && t <= 900.0,
          "F+++ = " + fmt("%.4f", f) + ", purity = " + fmt("%.4f", p) + ", " + fmt("%.0f", t) + " s"};
}

Outcome criterion4() {
  const auto ss = steady_state(build_liouvillian(dark_pair()));
  const double f = fidelity(ss.rho, bell_state(Parity::Odd));
  const double p = purity(ss.rho);
  return {f >= 0.95 && p >= 0.98, "F+- = " + fmt("%.4f", f) + ", purity = " + fmt("%.4f", p)};
}

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  SingleModeParams mode;
  mode.mode_detuning = 0.0;
  mode.mode_linewidth = 2459.0;
  mode.couplings = {7.75, 7.75};
  mode.gamma0 = 1.0;
  mode.n_max = 3;
  const std::vector<double> delta{0.2, -0.2}, omega{0.7, 0.7};
  const auto reduced = adiabatic_elimination(mode, delta, omega);
  std::vector<double> times;
  for (int k = 0; k <= 1000; k += 5) times.push_back(k);
  CMatrix joint = CMatrix::Zero(16, 16);
  joint(0, 0) = 1.0;
  const auto full = evolve(build_single_mode_liouvillian(mode, delta, omega), DensityMatrix(joint), times);
  const auto two = evolve(build_liouvillian(reduced), DensityMatrix::pure(basis_state("gg")), times);
  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto q = trace_out_mode(full[k], 2, mode.n_max);
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(population(q, i) - population(two[k], i)));
    for (auto parity : {Parity::Even, Parity::Odd}) {
      const auto b = bell_state(parity);
      worst = std::max(worst, std::abs(fidelity(q, b) - fidelity(two[k], b)));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 0.02 && t <= 60.0, "max population deviation = " + fmt("%.2e", worst) + ", " + fmt("%.1f", t) + " s"};
}

Outcome criterion6() {
  MasterEqParams one;
  one.n_qubits = 1;
  one.delta = {0.0};
  one.omega = {0.0};
  one.g = RMatrix::Zero(1, 1);
  one.gamma = RMatrix::Ones(1, 1);
  const double gap = liouvillian_gap(build_liouvillian(one)).gap;
  const auto L = build_liouvillian(dark_pair());
  const auto bell = liouvillian_gap(L);
  const auto ss = steady_state(L);
  const std::vector<double> t{20.0 * bell.tau};
  const auto rho = evolve(L, DensityMatrix::pure(basis_state("gg")), t).back();
  const double dist = trace_distance_norm(rho.entries(), ss.rho.entries());
  const bool ok = std::abs(gap - 0.5) <= 1e-12 && std::isfinite(bell.tau) && dist < 1e-6;
  return {ok, "qubit gap = " + fmt("%.15f", gap) + ", Bell tau = " + fmt("%.2f", bell.tau) +
                  ", ||rho(20 tau) - rho_ss||_1 = " + fmt("%.2e", dist)};
}

Outcome criterion7() {
  const char* text = "[run]\nmode = green-validate\n[grid]\nh = 0.025\n[layout]\nemitters = 2\nseparation = 1\n";
  run_mode(text, "green");
  auto m = read_metrics(work_dir() / "green" / "green_summary.csv");
  const double err = std::stod(m.at("max_rel_err"));
  const double recip = std::stod(m.at("reciprocity_err"));
  const double self = std::stod(m.at("self_rate"));
  const bool ok = err < 0.02 && recip < 1e-8 && std::abs(self - 1.0) <= 0.01;
  return {ok, "max rel err = " + fmt("%.4f", err) + ", reciprocity = " + fmt("%.1e", recip) +
                  ", self rate = " + fmt("%.4f", self)};
}

Outcome criterion8() {
  auto grid = em::PermittivityGrid::vacuum(8.0, 12.0);
  const auto layout = em::EmitterLayout::centered(grid, 2, 1.0);
  em::HelmholtzSolver solver(grid, layout.k0);
  const auto fields = em::solve_all_emitters(solver, layout);
  const CMatrix g0 = em::green_matrix(fields, layout);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> ux(grid.pml_cells, grid.nx - grid.pml_cells - 1);
  std::uniform_int_distribution<int> uz(grid.pml_cells, grid.nz - grid.pml_cells - 1);
  double worst = 0.0;
  int done = 0;
  while (done < 20) {
    const em::GridCell cell{ux(rng), uz(rng)};
    if (cell == layout.positions[0] || cell == layout.positions[1]) continue;
    const CMatrix predicted = design::born_delta_g(fields, grid, cell, 0.003, layout.k0);
    auto perturbed = grid;
    perturbed.eps[grid.index(cell)] += 0.003;
    solver.refactor(perturbed);
    const CMatrix actual = em::green_matrix(em::solve_all_emitters(solver, layout), layout) - g0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(predicted(i, j) - actual(i, j)) / std::abs(actual(i, j)));
    ++done;
  }
  return {worst <= 0.01, "20 cells, max relative deviation = " + fmt("%.2e", worst)};
}

Outcome criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = run_mode(kTopoptConfig, "topopt");
  const double t = seconds_since(t0);
  g_topopt_files = read_files(files);
  auto m = read_metrics(work_dir() / "topopt" / "summary.csv");
  const double f = std::stod(m.at("fidelity"));
  const double c = std::stod(m.at("gamma12_over_gamma"));
  const double g = std::stod(m.at("g12_over_gamma"));
  const double agree = std::stod(m.at("sign_agreement"));

  // Purcell column of the trajectory
  std::vector<double> purcell;
  std::istringstream in(g_topopt_files.at("trajectory.csv"));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    for (int col = 0; col <= 4; ++col) std::getline(row, cell, ',');
    purcell.push_back(std::stod(cell));
  }
  const std::size_t quarter = (purcell.size() - 1) / 4;
  const bool drop = quarter > 0 && purcell[quarter] < purcell[0];
  const bool ok = f >= 0.8 && c >= 0.9 && std::abs(g) <= 0.1 && agree >= 0.9 && drop && t <= 1800.0;
  return {ok, "F+- = " + fmt("%.4f", f) + ", gamma12/gamma = " + fmt("%.4f", c) + ", |g12|/gamma = " +
                  fmt("%.4f", std::abs(g)) + ", sign agreement = " + fmt("%.3f", agree) + ", Purcell " +
                  fmt("%.3f", purcell[0]) + " -> " + fmt("%.3f", quarter ? purcell[quarter] : purcell[0]) +
                  " over the first quarter, " + m.at("termination") + " after " + m.at("iterations") +
                  " sweeps, " + fmt("%.0f", t) + " s"};
}

Outcome criterion10() {
  if (g_pso_files.empty()) criterion3();
  if (g_topopt_files.empty()) criterion9();
  const auto pso = read_files(run_mode(kPsoConfig, "pso"));
  const auto topo = read_files(run_mode(kTopoptConfig, "topopt"));
  const bool same_pso = pso == g_pso_files;
  const bool same_topo = topo == g_topopt_files;
  return {same_pso && same_topo, std::string("pso artifacts ") + (same_pso ? "identical" : "DIFFER") +
                                     " (" + std::to_string(pso.size()) + " files), topopt artifacts " +
                                     (same_topo ? "identical" : "DIFFER") + " (" + std::to_string(topo.size()) +
                                     " files)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& [n, check] : criteria) {
    if (!selected.empty() && !selected.count(n)) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
