#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qtopo/core/states.hpp"
#include "qtopo/error.hpp"
#include "qtopo/io/artifacts.hpp"
#include "qtopo/io/config.hpp"
#include "qtopo/io/runner.hpp"
#include "qtopo/io/tomography.hpp"

using namespace qtopo;
using namespace qtopo::io;
namespace fs = std::filesystem;

namespace {

const char* kBell = R"(# odd Bell pair
[run]
mode = steady

[drive]
delta = 0.2, -0.2
omega = 0.7, 0.7

[couplings]
g = 0, 0; 0, 0
gamma = 1, 1; 1, 1

[target]
state = bell-odd
)";

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text, std::optional<Mode> mode = std::nullopt) {
  try {
    parse_config(text, mode);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("qtopo_test_io_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimal Bell config is accepted with defaults filled") {
  const auto c = parse_config(kBell);
  CHECK(c.run.mode == Mode::Steady);
  CHECK(c.run.seed == 1);
  REQUIRE(c.drive);
  CHECK(c.drive->omega == std::vector<double>{0.7, 0.7});
  CHECK(c.n_emitters() == 2);
  const auto p = c.master_params();
  CHECK(p.gamma(0, 1) == 1.0);
  CHECK(c.target_state().amplitudes() == bell_state(Parity::Odd).amplitudes());
  CHECK_FALSE(c.grid);
}

TEST_CASE("permittivity cap above 9 needs an explicit override") {
  const std::string base = "[run]\nmode = green-validate\n[layout]\n[grid]\n";
  CHECK_NOTHROW(parse_config(base + "eps_max = 9\n"));
  CHECK(error_line(base + "eps_max = 12\n") == 5);
  CHECK(error_text(base + "eps_max = 12\n").find("allow_high_eps") != std::string::npos);
  const auto c = parse_config(base + "eps_max = 12\nallow_high_eps = true\n");
  CHECK(c.grid->eps_max == 12.0);
}

TEST_CASE("missing sections are listed") {
  const auto empty = error_text("");
  CHECK(empty.find("[run]") != std::string::npos);
  const auto steady = error_text("", Mode::Steady);
  for (const char* s : {"[drive]", "[couplings]", "[target]"}) CHECK(steady.find(s) != std::string::npos);
  const auto topo = error_text("[run]\nmode = topopt\n");
  for (const char* s : {"[drive]", "[target]", "[grid]", "[layout]", "[topopt]"}) CHECK(topo.find(s) != std::string::npos);
  // the dynamics model decides between [couplings] and [single_mode]
  const std::string dyn = "[run]\nmode = dynamics\n[drive]\ndelta = 0, 0\nomega = 1, 1\n[target]\n[dynamics]\n";
  CHECK(error_text(dyn).find("[couplings]") != std::string::npos);
  CHECK(error_text(dyn + "model = single-mode\n").find("[single_mode]") != std::string::npos);
  CHECK_NOTHROW(parse_config(dyn + "model = single-mode\n[single_mode]\n"));
}

TEST_CASE("parse errors carry line numbers") {
  const std::string head = "[run]\nmode = gap\n[drive]\ndelta = 0\nomega = 1\n[couplings]\ng = 0\ngamma = 1\n";
  CHECK_NOTHROW(parse_config(head));
  CHECK(error_line(head + "colour = blue\n") == 9);
  CHECK(error_text(head + "colour = blue\n").find("unknown key 'colour'") != std::string::npos);
  CHECK(error_line(head + "[extras]\n") == 9);
  CHECK(error_line(head + "g = 1\n") == 9);
  CHECK(error_line(head + "[drive]\n") == 9);
  CHECK(error_line("[run]\nmode = gap\nno equals sign\n") == 3);
  CHECK(error_line("seed = 3\n") == 1);
  CHECK(error_line("[run]\nmode = sideways\n") == 2);
  // malformed and out-of-range values
  CHECK(error_line("[run]\nmode = gap\n[drive]\ndelta = 0, x\nomega = 1\n[couplings]\ng = 0\ngamma = 1\n") == 4);
  CHECK(error_line("[run]\nmode = gap\n[drive]\ndelta = 0, 0\nomega = 1\n[couplings]\ng = 0\ngamma = 1\n") == 5);
  CHECK(error_line("[run]\nmode = gap\n[drive]\ndelta = 0\nomega = 1\n[couplings]\ng = 0\ngamma = -1\n") == 8);
  CHECK(error_line("[run]\nmode = gap\n[drive]\ndelta = 0\nomega = 1\n[couplings]\ng = 0\ngamma = 1, 0\n") == 8);
  CHECK(error_line("[run]\nmode = pso\nseed = -1\n[pso]\n") == 3);
  CHECK(error_line("[run]\nmode = pso\n[pso]\nparticles = 0\n") == 4);
  CHECK(error_line("[run]\nmode = pso\n[pso]\nlower = 0, 1\nupper = 1, 2\n") == 4);
  // a non-PSD dissipative matrix is rejected at the gamma line
  const std::string bad_psd =
      "[run]\nmode = steady\n[drive]\ndelta = 0, 0\nomega = 1, 1\n[couplings]\ng = 0, 0; 0, 0\ngamma = 1, 2; 2, 1\n"
      "[target]\n";
  CHECK(error_line(bad_psd) == 8);
  // target size must match the drive set
  CHECK(error_line("[run]\nmode = steady\n[drive]\ndelta = 0, 0\nomega = 1, 1\n[couplings]\ng = 0, 0; 0, 0\n"
                   "gamma = 1, 0; 0, 1\n[target]\nstate = w\n") == 10);
}

TEST_CASE("echoed config re-parses to the same RunConfig") {
  const std::string full = R"([run]
mode = topopt
seed = 42
output = somewhere/else
[drive]
delta = 0.1, -0.30000000000000004
omega = 0.7, 0.7
[couplings]
g = 0, 0.123456789; 0.123456789, 0
gamma = 1, 0.9; 0.9, 1
[target]
state = bell-odd
[single_mode]
mode_detuning = 3.5
couplings = 1, 2
[dynamics]
model = single-mode
t_max = 1000
points = 7
[grid]
extent_x = 3
h = 0.03333333333333333
eps_max = 10
allow_high_eps = true
[layout]
separation = 1.25
[topopt]
delta_eps = 0.002
max_iters = 17
accept_threshold = 1e-9
[pso]
particles = 3
lower = 0.05, 0.05, -1, 0, -3, -3, -2, -2, 0, -2
upper = 5, 5, 1, 1, 3, 3, 2, 2, 2, 2
[tomography]
basis = bare
[units]
wavelength_nm = 780.5
)";
  const auto a = parse_config(full);
  const auto echo = echo_config(a);
  const auto b = parse_config(echo);
  CHECK(a == b);
  CHECK(echo_config(b) == echo);
  CHECK(b.drive->delta[1] == -0.30000000000000004);
  CHECK(b.grid->h == 0.03333333333333333);
  CHECK(echo.find("pml_strength = 12") != std::string::npos);

  auto c = parse_config(kBell);
  CHECK(parse_config(echo_config(c)) == c);
  apply_full_budget(c);
  CHECK(c.pso->particles == 2000);
  CHECK(c.pso->restarts == 1000);
  CHECK(parse_config(echo_config(c)) == c);
}

TEST_CASE("W projector in the W-block basis") {
  const CMatrix u = w_block_basis();
  CHECK((u.adjoint() * u - CMatrix::Identity(8, 8)).norm() < 1e-14);
  const auto t = tomography_table(DensityMatrix::pure(w_state()), TomographyBasis::WBlock);
  REQUIRE(t.labels.size() == 8);
  CHECK(t.labels[0] == "+++");
  CHECK(std::abs(t.entries(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(t.entries(1, 1)) < 1e-14);
  CHECK(std::abs(t.entries(2, 2)) < 1e-14);
  CMatrix rest = t.entries;
  rest(0, 0) = 0.0;
  CHECK(rest.norm() < 1e-14);

  const auto alpha = tomography_table(DensityMatrix::pure(w_alpha_state()), TomographyBasis::WBlock);
  CHECK(std::abs(alpha.entries(1, 1) - 1.0) < 1e-14);

  const auto bare = tomography_table(DensityMatrix::pure(bell_state(Parity::Odd)), TomographyBasis::Bare);
  CHECK(bare.labels == std::vector<std::string>{"gg", "ge", "eg", "ee"});
  CHECK(bare.entries(1, 2).real() == doctest::Approx(-0.5));
  const auto csv = tomography_csv(bare);
  CHECK(csv.rfind("row,re:gg,re:ge,re:eg,re:ee,im:gg,im:ge,im:eg,im:ee\n", 0) == 0);
  CHECK(csv.find("\nge,0,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  CHECK_THROWS_AS(tomography_table(DensityMatrix::pure(bell_state(Parity::Odd)), TomographyBasis::WBlock),
                  InvalidArgument);
}

TEST_CASE("hash, provenance and unit conversion") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(provenance_line(0xabcULL, 7) == std::string("# qtopo ") + kToolVersion + " config=0000000000000abc seed=7");
  // |p| = 1 e nm at 600 nm gives about 2.2 micro-eV
  CHECK(gamma0_micro_ev(1.0, 600.0) == doctest::Approx(2.3).epsilon(0.05));
  CHECK(gamma0_micro_ev(2.0, 600.0) == doctest::Approx(4 * gamma0_micro_ev(1.0, 600.0)));
  CHECK(gamma0_micro_ev(1.0, 300.0) == doctest::Approx(8 * gamma0_micro_ev(1.0, 600.0)));

  const auto t = log_time_grid(0.1, 1e4, 11);
  CHECK(t.front() == 0.1);
  CHECK(t.back() == 1e4);
  CHECK(t[2] == doctest::Approx(1.0));
  CHECK(t[6] == doctest::Approx(100.0));
}

TEST_CASE("uncommitted artifacts are removed") {
  const auto dir = scratch("partial");
  {
    ArtifactSet out(dir, provenance_line(1, 2));
    out.write("a.csv", "x\n");
    CHECK(fs::exists(dir / "a.csv"));
  }
  CHECK_FALSE(fs::exists(dir));
  {
    ArtifactSet out(dir, provenance_line(1, 2));
    out.write("a.csv", "x\n");
    out.commit();
  }
  CHECK(slurp(dir / "a.csv") == provenance_line(1, 2) + "\nx\n");
  fs::remove_all(dir);
}

TEST_CASE("command-line runs and exit codes") {
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  const auto cfg = dir / "bell.ini";
  std::ofstream(cfg) << kBell;
  std::ostringstream log, err;

  CliOptions o{"steady", cfg, dir / "steady", std::nullopt, false};
  REQUIRE(run_cli(o, log, err) == kExitOk);
  const auto metrics = slurp(dir / "steady" / "metrics.csv");
  CHECK(metrics.rfind("# qtopo ", 0) == 0);
  CHECK(metrics.find("\nfidelity,0.96") != std::string::npos);
  // the echoed config reproduces the run's configuration
  auto echoed = parse_config(slurp(dir / "steady" / "config.ini").substr(metrics.find('\n') + 1));
  auto original = parse_config(kBell);
  original.run.output = (dir / "steady").string();
  CHECK(echoed == original);

  CHECK(run_cli({"sideways", cfg, dir / "x", std::nullopt, false}, log, err) == kExitUsage);
  CHECK(run_cli({"steady", dir / "missing.ini", dir / "x", std::nullopt, false}, log, err) == kExitUsage);
  CHECK(run_cli({"topopt", cfg, dir / "x", std::nullopt, false}, log, err) == kExitUsage);
  CHECK_FALSE(fs::exists(dir / "x"));

  // undriven emitters with fully collective decay have two steady states
  const auto degenerate = dir / "degenerate.ini";
  std::string text = kBell;
  text.replace(text.find("omega = 0.7, 0.7"), 16, "omega = 0, 0");
  text.replace(text.find("delta = 0.2, -0.2"), 17, "delta = 0, 0");
  std::ofstream(degenerate) << text;
  CHECK(run_cli({"steady", degenerate, dir / "deg", std::nullopt, false}, log, err) == kExitNumerical);
  CHECK_FALSE(fs::exists(dir / "deg"));

  // the two-level transients approach the steady fidelity
  const auto dyn = dir / "dyn.ini";
  std::ofstream(dyn) << kBell << "[dynamics]\nt_min = 0.1\nt_max = 1e4\npoints = 9\n";
  REQUIRE(run_cli({"dynamics", dyn, dir / "dyn", 5, false}, log, err) == kExitOk);
  const auto tr = slurp(dir / "dyn" / "transients.csv");
  CHECK(tr.rfind("# qtopo 0.1.0 config=", 0) == 0);
  CHECK(tr.find(" seed=5\nt,n_pp,n_pm,n_G\n0.1,") != std::string::npos);
  CHECK(tr.find("\n10000,") != std::string::npos);

  // tomography of the same state in the bare basis
  const auto tomo = dir / "tomo.ini";
  std::ofstream(tomo) << kBell << "[tomography]\nbasis = bare\n";
  REQUIRE(run_cli({"tomography", tomo, dir / "tomo", std::nullopt, false}, log, err) == kExitOk);
  CHECK(slurp(dir / "tomo" / "tomography.csv").find("\nrow,re:gg,") != std::string::npos);
  fs::remove_all(dir);
}
