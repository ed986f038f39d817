#include "qtopo/io/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <system_error>

#include "qtopo/em/grid_io.hpp"
#include "qtopo/error.hpp"

namespace qtopo::io {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string provenance_line(std::uint64_t config_hash, std::uint64_t seed) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config_hash));
  return std::string("# qtopo ") + kToolVersion + " config=" + hex + " seed=" + std::to_string(seed);
}

ArtifactSet::ArtifactSet(std::filesystem::path dir, std::string provenance)
    : dir_(std::move(dir)), provenance_(std::move(provenance)) {
  if (provenance_.rfind("# ", 0) != 0) throw InvalidArgument("provenance line must start with '# '");
  std::error_code ec;
  if (!std::filesystem::exists(dir_)) {
    created_dir_ = std::filesystem::create_directories(dir_, ec);
    if (ec) throw InvalidArgument("cannot create output directory " + dir_.string() + ": " + ec.message());
  } else if (!std::filesystem::is_directory(dir_)) {
    throw InvalidArgument(dir_.string() + " is not a directory");
  }
}

ArtifactSet::~ArtifactSet() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& f : files_) std::filesystem::remove(f, ec);
  if (created_dir_ && std::filesystem::is_empty(dir_, ec)) std::filesystem::remove(dir_, ec);
}

std::filesystem::path ArtifactSet::write(const std::string& name, std::string_view body) {
  const auto path = dir_ / name;
  files_.push_back(path);
  std::ofstream out(path, std::ios::binary);
  out << provenance_ << '\n' << body;
  out.close();
  if (!out) throw InvalidArgument("failed writing " + path.string());
  return path;
}

std::filesystem::path ArtifactSet::write_grid(const std::string& name, const em::PermittivityGrid& grid) {
  const auto path = dir_ / name;
  files_.push_back(path);
  em::save_grid(path, grid, em::GridEncoding::Csv, std::string_view(provenance_).substr(2));
  return path;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + '\n';
}

double gamma0_micro_ev(double dipole_enm, double wavelength_nm) {
  if (!(dipole_enm > 0) || !(wavelength_nm > 0)) throw InvalidArgument("gamma0_micro_ev: arguments must be positive");
  // CODATA 2018
  constexpr double c = 299792458.0;
  constexpr double e = 1.602176634e-19;
  constexpr double eps0 = 8.8541878128e-12;
  const double omega = 2 * std::numbers::pi * c / (wavelength_nm * 1e-9);
  const double p = dipole_enm * e * 1e-9;
  const double joules = std::pow(omega, 3) * p * p / (3 * std::numbers::pi * eps0 * c * c * c);
  return joules / e * 1e6;
}

}  // namespace qtopo::io
