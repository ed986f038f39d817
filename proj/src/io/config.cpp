#include "qtopo/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "qtopo/core/states.hpp"
#include "qtopo/em/grid_io.hpp"
#include "qtopo/error.hpp"
#include "qtopo/pso/triple.hpp"

namespace qtopo::io {

namespace {

template <class E>
struct NameTable {
  E value;
  const char* name;
};

constexpr NameTable<Mode> kModes[] = {{Mode::Steady, "steady"},   {Mode::Dynamics, "dynamics"},
                                      {Mode::Gap, "gap"},         {Mode::GreenValidate, "green-validate"},
                                      {Mode::Pso, "pso"},         {Mode::Topopt, "topopt"},
                                      {Mode::Tomography, "tomography"}};
constexpr NameTable<TargetKind> kTargets[] = {
    {TargetKind::BellOdd, "bell-odd"}, {TargetKind::BellEven, "bell-even"}, {TargetKind::W, "w"}};
constexpr NameTable<DynamicsModel> kModels[] = {{DynamicsModel::TwoLevel, "two-level"},
                                                {DynamicsModel::SingleMode, "single-mode"}};
constexpr NameTable<TomographyBasis> kBases[] = {{TomographyBasis::Bare, "bare"},
                                                 {TomographyBasis::WBlock, "w-block"}};

template <class E, std::size_t N>
std::string name_of(const NameTable<E> (&table)[N], E v) {
  for (const auto& t : table)
    if (t.value == v) return t.name;
  return "?";
}

template <class E, std::size_t N>
E value_of(const NameTable<E> (&table)[N], std::string_view s, const char* what, int line) {
  for (const auto& t : table)
    if (s == t.name) return t.value;
  std::string options;
  for (const auto& t : table) options += std::string(options.empty() ? "" : ", ") + t.name;
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(s) + "' (expected " + options + ")", line);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto p = s.find(sep);
    out.push_back(trim(s.substr(0, p)));
    if (p == std::string_view::npos) return out;
    s.remove_prefix(p + 1);
  }
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> keys;
};

// Typed access to one section; every lookup marks the key as consumed.
class Reader {
 public:
  Reader(std::string name, Section& s) : name_(std::move(name)), s_(s) {}

  int line(const char* key) const {
    const auto it = s_.keys.find(key);
    return it == s_.keys.end() ? s_.line : it->second.line;
  }

  template <class T>
  void get(const char* key, T& out) {
    const auto it = s_.keys.find(key);
    if (it == s_.keys.end()) return;
    it->second.used = true;
    parse(it->second.value, it->second.line, key, out);
  }

  template <class E, std::size_t N>
  void get_enum(const char* key, const NameTable<E> (&table)[N], E& out) {
    const auto it = s_.keys.find(key);
    if (it == s_.keys.end()) return;
    it->second.used = true;
    out = value_of(table, it->second.value, key, it->second.line);
  }

  void require(bool ok, const char* key, const std::string& msg) const {
    if (!ok) throw ConfigError("[" + name_ + "] " + key + ": " + msg, line(key));
  }

  void reject_unused() const {
    for (const auto& [k, e] : s_.keys)
      if (!e.used) throw ConfigError("unknown key '" + k + "' in [" + name_ + "]", e.line);
  }

 private:
  [[noreturn]] void bad(const char* key, int line, const std::string& what) const {
    throw ConfigError("[" + name_ + "] " + key + ": " + what, line);
  }

  double number(std::string_view v, int line, const char* key) const {
    if (v.empty()) bad(key, line, "missing value");
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
      bad(key, line, "not a finite number: '" + std::string(v) + "'");
    return x;
  }

  void parse(std::string_view v, int line, const char* key, double& out) const { out = number(v, line, key); }

  void parse(std::string_view v, int line, const char* key, int& out) const {
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size())
      bad(key, line, "not an integer: '" + std::string(v) + "'");
  }

  void parse(std::string_view v, int line, const char* key, std::uint64_t& out) const {
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size())
      bad(key, line, "not a non-negative integer: '" + std::string(v) + "'");
  }

  void parse(std::string_view v, int line, const char* key, bool& out) const {
    if (v == "true") out = true;
    else if (v == "false") out = false;
    else bad(key, line, "expected true or false");
  }

  void parse(std::string_view v, int, const char*, std::string& out) const { out = std::string(v); }

  void parse(std::string_view v, int line, const char* key, std::vector<double>& out) const {
    out.clear();
    if (v.empty()) return;
    for (auto item : split(v, ',')) out.push_back(number(item, line, key));
  }

  void parse(std::string_view v, int line, const char* key, std::vector<std::vector<double>>& out) const {
    out.clear();
    for (auto row : split(v, ';')) {
      out.emplace_back();
      parse(row, line, key, out.back());
    }
  }

  std::string name_;
  Section& s_;
};

std::string list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + em::format_double(v[i]);
  return s;
}

std::string matrix(const std::vector<std::vector<double>>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "; " : "") + list(m[i]);
  return s;
}

bool square(const std::vector<std::vector<double>>& m, std::size_t n) {
  return m.size() == n && std::all_of(m.begin(), m.end(), [n](const auto& r) { return r.size() == n; });
}

RMatrix to_matrix(const std::vector<std::vector<double>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  RMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j];
  return out;
}

int target_qubits(TargetKind t) { return t == TargetKind::W ? 3 : 2; }

}  // namespace

std::string to_string(Mode m) { return name_of(kModes, m); }
std::string to_string(TargetKind t) { return name_of(kTargets, t); }
std::string to_string(DynamicsModel m) { return name_of(kModels, m); }
std::string to_string(TomographyBasis b) { return name_of(kBases, b); }
Mode parse_mode(std::string_view name) { return value_of(kModes, name, "mode", 0); }

std::vector<std::string> required_sections(Mode mode) {
  switch (mode) {
    case Mode::Steady: return {"drive", "couplings", "target"};
    case Mode::Dynamics: return {"drive", "target", "dynamics"};
    case Mode::Gap: return {"drive", "couplings"};
    case Mode::GreenValidate: return {"grid", "layout"};
    case Mode::Pso: return {"pso"};
    case Mode::Topopt: return {"drive", "target", "grid", "layout", "topopt"};
    case Mode::Tomography: return {"drive", "couplings", "tomography"};
  }
  return {};
}

RunConfig parse_config(std::string_view text, std::optional<Mode> mode) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) throw ConfigError("empty section name", line_no);
      if (sections.count(name)) throw ConfigError("duplicate section [" + name + "]", line_no);
      current = &sections[name];
      current->line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    if (!current) throw ConfigError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (current->keys.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    current->keys[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
  }
  const int end_line = std::max(1, line_no);

  RunConfig c;
  if (auto it = sections.find("run"); it != sections.end()) {
    Reader r("run", it->second);
    const auto mode_it = it->second.keys.find("mode");
    if (mode_it != it->second.keys.end()) {
      mode_it->second.used = true;
      c.run.mode = value_of(kModes, mode_it->second.value, "mode", mode_it->second.line);
    } else if (!mode) {
      r.require(false, "mode", "missing");
    }
    r.get("seed", c.run.seed);
    r.get("output", c.run.output);
    r.require(!c.run.output.empty(), "output", "must not be empty");
    r.reject_unused();
  } else if (!mode) {
    throw ConfigError("missing required section [run] (with a mode key)", end_line);
  }
  if (mode) c.run.mode = *mode;

  for (const auto& [name, s] : sections) {
    static const char* known[] = {"run",  "drive",  "couplings", "target", "single_mode", "dynamics", "grid",
                                  "layout", "topopt", "pso", "tomography", "units"};
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return name == k; }) == std::end(known))
      throw ConfigError("unknown section [" + name + "]", s.line);
  }

  std::vector<std::string> missing;
  for (const auto& name : required_sections(c.run.mode))
    if (!sections.count(name)) missing.push_back(name);
  if (c.run.mode == Mode::Dynamics && sections.count("dynamics")) {
    // the model decides which coupling description is needed
    Reader peek("dynamics", sections["dynamics"]);
    DynamicsModel model = DynamicsModel::TwoLevel;
    peek.get_enum("model", kModels, model);
    const char* extra = model == DynamicsModel::SingleMode ? "single_mode" : "couplings";
    if (!sections.count(extra)) missing.push_back(extra);
  }
  if (!missing.empty()) {
    std::string msg = "missing required section(s) for mode " + to_string(c.run.mode) + ":";
    for (const auto& m : missing) msg += " [" + m + "]";
    throw ConfigError(msg, end_line);
  }

  auto section = [&](const char* name) -> Section* {
    auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  if (auto* s = section("drive")) {
    Reader r("drive", *s);
    DriveSection d;
    r.get("delta", d.delta);
    r.get("omega", d.omega);
    r.require(!d.delta.empty() && d.delta.size() <= 3, "delta", "needs 1 to 3 values");
    r.require(d.omega.size() == d.delta.size(), "omega", "needs one value per emitter");
    r.reject_unused();
    c.drive = d;
  }
  const int n = c.drive ? static_cast<int>(c.drive->delta.size()) : 0;

  if (auto* s = section("couplings")) {
    Reader r("couplings", *s);
    CouplingsSection k;
    r.get("g", k.g);
    r.get("gamma", k.gamma);
    r.reject_unused();
    if (n > 0) {
      r.require(square(k.g, n), "g", "must be " + std::to_string(n) + "x" + std::to_string(n));
      r.require(square(k.gamma, n), "gamma", "must be " + std::to_string(n) + "x" + std::to_string(n));
      MasterEqParams p;
      p.n_qubits = n;
      p.delta = c.drive->delta;
      p.omega = c.drive->omega;
      p.g = to_matrix(k.g);
      p.gamma = to_matrix(k.gamma);
      try {
        p.validate();
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("[couplings] ") + e.what(), r.line("gamma"));
      }
    }
    c.couplings = k;
  }

  if (auto* s = section("target")) {
    Reader r("target", *s);
    TargetSection t;
    r.get_enum("state", kTargets, t.state);
    if (n > 0)
      r.require(target_qubits(t.state) == n, "state",
                to_string(t.state) + " needs " + std::to_string(target_qubits(t.state)) + " emitters");
    r.reject_unused();
    c.target = t;
  }

  if (auto* s = section("single_mode")) {
    Reader r("single_mode", *s);
    SingleModeSection m;
    r.get("mode_detuning", m.mode_detuning);
    r.get("mode_linewidth", m.mode_linewidth);
    r.get("couplings", m.couplings);
    r.get("gamma0", m.gamma0);
    r.get("n_max", m.n_max);
    r.require(m.mode_linewidth > 0, "mode_linewidth", "must be positive");
    r.require(m.gamma0 > 0, "gamma0", "must be positive");
    r.require(m.n_max >= 1 && m.n_max <= 12, "n_max", "must lie in [1, 12]");
    r.require(n == 0 || static_cast<int>(m.couplings.size()) == n, "couplings", "needs one value per emitter");
    r.reject_unused();
    c.single_mode = m;
  }

  if (auto* s = section("dynamics")) {
    Reader r("dynamics", *s);
    DynamicsSection d;
    r.get_enum("model", kModels, d.model);
    r.get("t_min", d.t_min);
    r.get("t_max", d.t_max);
    r.get("points", d.points);
    r.require(d.t_min > 0, "t_min", "must be positive");
    r.require(d.t_max > d.t_min, "t_max", "must exceed t_min");
    r.require(d.points >= 2 && d.points <= 100000, "points", "must lie in [2, 100000]");
    r.reject_unused();
    c.dynamics = d;
  }

  if (auto* s = section("grid")) {
    Reader r("grid", *s);
    GridSection g;
    r.get("extent_x", g.extent_x);
    r.get("extent_z", g.extent_z);
    r.get("h", g.h);
    r.get("pml_cells", g.pml_cells);
    r.get("pml_strength", g.pml_strength);
    r.get("eps_max", g.eps_max);
    r.get("allow_high_eps", g.allow_high_eps);
    r.get("seed_map", g.seed_map);
    r.require(g.extent_x > 0, "extent_x", "must be positive");
    r.require(g.extent_z > 0, "extent_z", "must be positive");
    r.require(g.h > 0 && g.h <= 0.1, "h", "must lie in (0, 0.1] wavelengths");
    r.require(g.pml_cells >= 8, "pml_cells", "must be at least 8");
    r.require(g.pml_strength > 0, "pml_strength", "must be positive");
    r.require(g.eps_max >= 1, "eps_max", "must be at least 1");
    r.require(g.eps_max <= 9 || g.allow_high_eps, "eps_max",
              "exceeds 9; set allow_high_eps = true to override");
    r.reject_unused();
    c.grid = g;
  }

  if (auto* s = section("layout")) {
    Reader r("layout", *s);
    LayoutSection l;
    r.get("emitters", l.emitters);
    r.get("separation", l.separation);
    r.require(l.emitters >= 1 && l.emitters <= 3, "emitters", "must lie in [1, 3]");
    r.require(l.separation >= 0.5, "separation", "must be at least half a wavelength");
    r.require(n == 0 || c.run.mode != Mode::Topopt || l.emitters == n, "emitters", "must match the drive set");
    r.reject_unused();
    c.layout = l;
  }

  if (auto* s = section("topopt")) {
    Reader r("topopt", *s);
    TopoptSection t;
    r.get("delta_eps", t.delta_eps);
    r.get("max_iters", t.max_iters);
    r.get("fidelity_goal", t.fidelity_goal);
    r.get("accept_threshold", t.accept_threshold);
    r.get("max_backtracks", t.max_backtracks);
    r.require(t.delta_eps > 0 && t.delta_eps <= 0.01, "delta_eps", "must lie in (0, 0.01]");
    r.require(t.max_iters >= 0, "max_iters", "must be non-negative");
    r.require(t.fidelity_goal > 0 && t.fidelity_goal <= 1, "fidelity_goal", "must lie in (0, 1]");
    r.require(t.accept_threshold >= 0, "accept_threshold", "must be non-negative");
    r.require(t.max_backtracks >= 0, "max_backtracks", "must be non-negative");
    r.reject_unused();
    c.topopt = t;
  }

  if (auto* s = section("pso")) {
    Reader r("pso", *s);
    PsoSection p;
    r.get("particles", p.particles);
    r.get("iters", p.iters);
    r.get("restarts", p.restarts);
    r.get("inertia", p.inertia);
    r.get("cognitive", p.cognitive);
    r.get("social", p.social);
    r.get("lower", p.lower);
    r.get("upper", p.upper);
    r.require(p.particles >= 1, "particles", "must be positive");
    r.require(p.iters >= 1, "iters", "must be positive");
    r.require(p.restarts >= 1, "restarts", "must be positive");
    r.require(p.inertia >= 0 && p.inertia < 1, "inertia", "must lie in [0, 1)");
    r.require(p.cognitive >= 0, "cognitive", "must be non-negative");
    r.require(p.social >= 0, "social", "must be non-negative");
    constexpr std::size_t dim = pso::SymmetricTripleParams::size;
    r.require(p.lower.empty() || p.lower.size() == dim, "lower", "needs " + std::to_string(dim) + " values");
    r.require(p.upper.size() == p.lower.size(), "upper", "must match lower");
    for (std::size_t d = 0; d < p.lower.size(); ++d) r.require(p.lower[d] < p.upper[d], "upper", "must exceed lower");
    r.reject_unused();
    c.pso = p;
  }

  if (auto* s = section("tomography")) {
    Reader r("tomography", *s);
    TomographySection t;
    r.get_enum("basis", kBases, t.basis);
    r.require(t.basis != TomographyBasis::WBlock || n == 0 || n == 3, "basis", "w-block needs 3 emitters");
    r.reject_unused();
    c.tomography = t;
  }

  if (auto* s = section("units")) {
    Reader r("units", *s);
    UnitsSection u;
    r.get("dipole_enm", u.dipole_enm);
    r.get("wavelength_nm", u.wavelength_nm);
    r.require(u.dipole_enm > 0, "dipole_enm", "must be positive");
    r.require(u.wavelength_nm > 0, "wavelength_nm", "must be positive");
    r.reject_unused();
    c.units = u;
  }
  return c;
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  auto kv = [&](const char* k, const std::string& v) { out << k << " = " << v << '\n'; };
  auto num = [&](const char* k, double v) { kv(k, em::format_double(v)); };
  out << "[run]\n";
  kv("mode", to_string(c.run.mode));
  kv("seed", std::to_string(c.run.seed));
  kv("output", c.run.output);
  if (c.drive) {
    out << "\n[drive]\n";
    kv("delta", list(c.drive->delta));
    kv("omega", list(c.drive->omega));
  }
  if (c.couplings) {
    out << "\n[couplings]\n";
    kv("g", matrix(c.couplings->g));
    kv("gamma", matrix(c.couplings->gamma));
  }
  if (c.target) {
    out << "\n[target]\n";
    kv("state", to_string(c.target->state));
  }
  if (c.single_mode) {
    const auto& m = *c.single_mode;
    out << "\n[single_mode]\n";
    num("mode_detuning", m.mode_detuning);
    num("mode_linewidth", m.mode_linewidth);
    kv("couplings", list(m.couplings));
    num("gamma0", m.gamma0);
    kv("n_max", std::to_string(m.n_max));
  }
  if (c.dynamics) {
    out << "\n[dynamics]\n";
    kv("model", to_string(c.dynamics->model));
    num("t_min", c.dynamics->t_min);
    num("t_max", c.dynamics->t_max);
    kv("points", std::to_string(c.dynamics->points));
  }
  if (c.grid) {
    const auto& g = *c.grid;
    out << "\n[grid]\n";
    num("extent_x", g.extent_x);
    num("extent_z", g.extent_z);
    num("h", g.h);
    kv("pml_cells", std::to_string(g.pml_cells));
    num("pml_strength", g.pml_strength);
    num("eps_max", g.eps_max);
    kv("allow_high_eps", g.allow_high_eps ? "true" : "false");
    if (!g.seed_map.empty()) kv("seed_map", g.seed_map);
  }
  if (c.layout) {
    out << "\n[layout]\n";
    kv("emitters", std::to_string(c.layout->emitters));
    num("separation", c.layout->separation);
  }
  if (c.topopt) {
    const auto& t = *c.topopt;
    out << "\n[topopt]\n";
    num("delta_eps", t.delta_eps);
    kv("max_iters", std::to_string(t.max_iters));
    num("fidelity_goal", t.fidelity_goal);
    num("accept_threshold", t.accept_threshold);
    kv("max_backtracks", std::to_string(t.max_backtracks));
  }
  if (c.pso) {
    const auto& p = *c.pso;
    out << "\n[pso]\n";
    kv("particles", std::to_string(p.particles));
    kv("iters", std::to_string(p.iters));
    kv("restarts", std::to_string(p.restarts));
    num("inertia", p.inertia);
    num("cognitive", p.cognitive);
    num("social", p.social);
    if (!p.lower.empty()) {
      kv("lower", list(p.lower));
      kv("upper", list(p.upper));
    }
  }
  if (c.tomography) {
    out << "\n[tomography]\n";
    kv("basis", to_string(c.tomography->basis));
  }
  if (c.units) {
    out << "\n[units]\n";
    num("dipole_enm", c.units->dipole_enm);
    num("wavelength_nm", c.units->wavelength_nm);
  }
  return out.str();
}

void apply_full_budget(RunConfig& c) {
  if (!c.pso) c.pso.emplace();
  c.pso->particles = 2000;
  c.pso->iters = 5000;
  c.pso->restarts = 1000;
}

int RunConfig::n_emitters() const {
  if (drive) return static_cast<int>(drive->delta.size());
  if (layout) return layout->emitters;
  return 0;
}

MasterEqParams RunConfig::master_params() const {
  if (!drive || !couplings) throw InvalidArgument("master_params: [drive] and [couplings] are required");
  MasterEqParams p;
  p.n_qubits = n_emitters();
  p.delta = drive->delta;
  p.omega = drive->omega;
  p.g = to_matrix(couplings->g);
  p.gamma = to_matrix(couplings->gamma);
  p.validate();
  return p;
}

StateVector RunConfig::target_state() const {
  const TargetKind t = target ? target->state : TargetKind::W;
  switch (t) {
    case TargetKind::BellOdd: return bell_state(Parity::Odd);
    case TargetKind::BellEven: return bell_state(Parity::Even);
    case TargetKind::W: return w_state();
  }
  throw InvalidArgument("target_state: unknown target");
}

em::PermittivityGrid RunConfig::make_grid() const {
  if (!grid) throw InvalidArgument("make_grid: [grid] is required");
  em::PermittivityGrid g = grid->seed_map.empty()
                               ? em::PermittivityGrid::vacuum(grid->extent_x, grid->extent_z, grid->h, grid->pml_cells)
                               : em::load_grid(grid->seed_map);
  g.eps_max = grid->eps_max;
  g.pml_strength = grid->pml_strength;
  g.validate();
  return g;
}

em::EmitterLayout RunConfig::make_layout(const em::PermittivityGrid& g) const {
  if (!layout) throw InvalidArgument("make_layout: [layout] is required");
  return em::EmitterLayout::centered(g, layout->emitters, layout->separation);
}

design::TOConfig RunConfig::to_config() const {
  if (!drive || !topopt || !grid) throw InvalidArgument("to_config: [drive], [grid] and [topopt] are required");
  design::TOConfig t;
  t.target = target_state();
  t.delta = drive->delta;
  t.omega = drive->omega;
  t.eps_max = grid->eps_max;
  t.delta_eps = topopt->delta_eps;
  t.max_iters = topopt->max_iters;
  t.fidelity_goal = topopt->fidelity_goal;
  t.accept_threshold = topopt->accept_threshold;
  t.max_backtracks = topopt->max_backtracks;
  t.validate();
  return t;
}

pso::PsoConfig RunConfig::pso_config() const {
  auto c = pso::default_triple_config();
  const PsoSection p = pso ? *pso : PsoSection{};
  c.n_particles = p.particles;
  c.n_iters = p.iters;
  c.n_restarts = p.restarts;
  c.inertia = p.inertia;
  c.cognitive = p.cognitive;
  c.social = p.social;
  c.seed = run.seed;
  if (!p.lower.empty()) {
    c.lower = p.lower;
    c.upper = p.upper;
  }
  c.validate();
  return c;
}

}  // namespace qtopo::io
