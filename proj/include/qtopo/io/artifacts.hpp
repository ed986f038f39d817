#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qtopo/em/grid.hpp"

namespace qtopo::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// "# qtopo <version> config=<16 hex digits> seed=<n>"
std::string provenance_line(std::uint64_t config_hash, std::uint64_t seed);

/// Files written into one output directory. Every file starts with the
/// provenance line. Unless commit() is called, the destructor deletes every
/// file written so far (and the directory, if this set created it).
class ArtifactSet {
 public:
  ArtifactSet(std::filesystem::path dir, std::string provenance);
  ~ArtifactSet();
  ArtifactSet(const ArtifactSet&) = delete;
  ArtifactSet& operator=(const ArtifactSet&) = delete;

  /// Writes provenance + body to dir/name.
  std::filesystem::path write(const std::string& name, std::string_view body);
  /// Grid file (CSV encoding) with the provenance as its comment line.
  std::filesystem::path write_grid(const std::string& name, const em::PermittivityGrid& grid);
  void commit() { committed_ = true; }

  const std::vector<std::filesystem::path>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string provenance_;
  std::vector<std::filesystem::path> files_;
  bool created_dir_ = false;
  bool committed_ = false;
};

/// Comma-joined row of already formatted cells.
std::string csv_row(const std::vector<std::string>& cells);

/// Free-space decay rate hbar * gamma_0 = w^3 |p|^2 / (3 pi eps_0 c^3) in micro-eV,
/// for a transition dipole in e nm and a wavelength in nm.
double gamma0_micro_ev(double dipole_enm, double wavelength_nm);

}  // namespace qtopo::io
