#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qtopo/em/grid.hpp"

namespace qtopo::em {

enum class GridEncoding { Csv, RawF64 };

// Map file layout: optional '#' comment lines, then one header line
//   qtopo-grid nx=<int> nz=<int> h=<double> pml_cells=<int> encoding=<csv|f64le>
// followed by nz rows of nx values (row-major, rows along z). CSV values use
// the shortest round-trip decimal form; f64le is raw little-endian IEEE-754.
// Both encodings reproduce every value bit for bit.

void write_grid(std::ostream& out, const PermittivityGrid& grid, GridEncoding encoding,
                std::string_view comment = {});

/// Reads geometry and values; eps_max and pml_strength keep their defaults
/// and no range validation is applied.
PermittivityGrid read_grid(std::istream& in);

void save_grid(const std::filesystem::path& path, const PermittivityGrid& grid, GridEncoding encoding,
               std::string_view comment = {});
PermittivityGrid load_grid(const std::filesystem::path& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace qtopo::em
