#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtopo/core/types.hpp"
#include "qtopo/design/topopt.hpp"
#include "qtopo/em/grid.hpp"
#include "qtopo/pso/swarm.hpp"

namespace qtopo::io {

enum class Mode { Steady, Dynamics, Gap, GreenValidate, Pso, Topopt, Tomography };
enum class TargetKind { BellOdd, BellEven, W };
enum class DynamicsModel { TwoLevel, SingleMode };
enum class TomographyBasis { Bare, WBlock };

std::string to_string(Mode m);
std::string to_string(TargetKind t);
std::string to_string(DynamicsModel m);
std::string to_string(TomographyBasis b);
/// Throws ConfigError for unknown names.
Mode parse_mode(std::string_view name);

struct RunSection {
  Mode mode = Mode::Steady;
  std::uint64_t seed = 1;
  std::string output = "qtopo-out";  ///< artifact directory; --out overrides
  friend bool operator==(const RunSection&, const RunSection&) = default;
};

struct DriveSection {
  std::vector<double> delta;
  std::vector<double> omega;
  friend bool operator==(const DriveSection&, const DriveSection&) = default;
};

struct CouplingsSection {
  std::vector<std::vector<double>> g;  ///< rows
  std::vector<std::vector<double>> gamma;
  friend bool operator==(const CouplingsSection&, const CouplingsSection&) = default;
};

struct TargetSection {
  TargetKind state = TargetKind::BellOdd;
  friend bool operator==(const TargetSection&, const TargetSection&) = default;
};

struct SingleModeSection {
  double mode_detuning = 0.0;
  double mode_linewidth = 2459.0;
  std::vector<double> couplings{7.75, 7.75};
  double gamma0 = 1.0;
  int n_max = 3;
  friend bool operator==(const SingleModeSection&, const SingleModeSection&) = default;
};

struct DynamicsSection {
  DynamicsModel model = DynamicsModel::TwoLevel;
  double t_min = 0.1;
  double t_max = 1e4;
  int points = 81;  ///< log-spaced samples including both ends
  friend bool operator==(const DynamicsSection&, const DynamicsSection&) = default;
};

struct GridSection {
  double extent_x = 8.0;
  double extent_z = 12.0;
  double h = 0.025;
  int pml_cells = 12;
  double pml_strength = 12.0;
  double eps_max = 9.0;
  bool allow_high_eps = false;
  std::string seed_map;  ///< optional map file; vacuum when empty
  friend bool operator==(const GridSection&, const GridSection&) = default;
};

struct LayoutSection {
  int emitters = 2;
  double separation = 1.0;
  friend bool operator==(const LayoutSection&, const LayoutSection&) = default;
};

struct TopoptSection {
  double delta_eps = 0.003;
  int max_iters = 900;
  double fidelity_goal = 0.95;
  double accept_threshold = 0.0;
  int max_backtracks = 6;
  friend bool operator==(const TopoptSection&, const TopoptSection&) = default;
};

struct PsoSection {
  int particles = 200;
  int iters = 500;
  int restarts = 20;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  std::vector<double> lower;  ///< swarm coordinates; defaults to the built-in box
  std::vector<double> upper;
  friend bool operator==(const PsoSection&, const PsoSection&) = default;
};

struct TomographySection {
  TomographyBasis basis = TomographyBasis::Bare;
  friend bool operator==(const TomographySection&, const TomographySection&) = default;
};

struct UnitsSection {
  double dipole_enm = 1.0;  ///< |p| in e nm
  double wavelength_nm = 600.0;
  friend bool operator==(const UnitsSection&, const UnitsSection&) = default;
};

/// Parsed configuration. Optional sections are engaged when present in the
/// text; sections required by the mode are always engaged after parsing.
struct RunConfig {
  RunSection run;
  std::optional<DriveSection> drive;
  std::optional<CouplingsSection> couplings;
  std::optional<TargetSection> target;
  std::optional<SingleModeSection> single_mode;
  std::optional<DynamicsSection> dynamics;
  std::optional<GridSection> grid;
  std::optional<LayoutSection> layout;
  std::optional<TopoptSection> topopt;
  std::optional<PsoSection> pso;
  std::optional<TomographySection> tomography;
  std::optional<UnitsSection> units;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  int n_emitters() const;
  /// Master-equation parameters from [drive] and [couplings].
  MasterEqParams master_params() const;
  StateVector target_state() const;
  /// Vacuum grid (or the seed map) with the [grid] settings.
  em::PermittivityGrid make_grid() const;
  em::EmitterLayout make_layout(const em::PermittivityGrid& grid) const;
  design::TOConfig to_config() const;
  pso::PsoConfig pso_config() const;
};

/// Sections a mode cannot run without.
std::vector<std::string> required_sections(Mode mode);

/// Line-oriented "key = value" text with "[section]" headers and '#'
/// comments. Lists are comma separated; matrix rows are separated by ';'.
/// `mode` overrides [run] mode. Unknown sections or keys, duplicates, missing
/// sections and out-of-range values raise ConfigError with the line number.
RunConfig parse_config(std::string_view text, std::optional<Mode> mode = std::nullopt);

/// Effective configuration with every default spelled out; parse_config of
/// the result reproduces `config` exactly.
std::string echo_config(const RunConfig& config);

/// Applies the large reference swarm budget (2000 particles, 5000 iterations,
/// 1000 restarts).
void apply_full_budget(RunConfig& config);

}  // namespace qtopo::io
