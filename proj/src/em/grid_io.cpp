#include "qtopo/em/grid_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "qtopo/error.hpp"

namespace qtopo::em {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw InvalidArgument("could not format number");
  return {buf, end};
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("invalid number '" + std::string(text) + "'");
  }
  return v;
}

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xFFu) << (8 * (7 - b));
    return r;
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidArgument("invalid integer '" + s + "'");
  return v;
}

}  // namespace

void write_grid(std::ostream& out, const PermittivityGrid& grid, GridEncoding encoding,
                std::string_view comment) {
  if (grid.eps.size() != grid.size()) throw InvalidArgument("permittivity array does not match nx * nz");
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "qtopo-grid nx=" << grid.nx << " nz=" << grid.nz << " h=" << format_double(grid.h)
      << " pml_cells=" << grid.pml_cells
      << " encoding=" << (encoding == GridEncoding::Csv ? "csv" : "f64le") << '\n';
  if (encoding == GridEncoding::Csv) {
    std::string line;
    for (int iz = 0; iz < grid.nz; ++iz) {
      line.clear();
      for (int ix = 0; ix < grid.nx; ++ix) {
        if (ix) line += ',';
        line += format_double(grid.eps[grid.index(ix, iz)]);
      }
      out << line << '\n';
    }
  } else {
    for (double v : grid.eps) {
      const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!out) throw InvalidArgument("failed to write permittivity map");
}

PermittivityGrid read_grid(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw InvalidArgument("map file has no header line");
  } while (!line.empty() && line[0] == '#');

  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "qtopo-grid") throw InvalidArgument("not a permittivity map (missing 'qtopo-grid' header)");
  std::map<std::string, std::string> fields;
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw InvalidArgument("malformed header token '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"nx", "nz", "h", "pml_cells", "encoding"}) {
    if (!fields.count(key)) throw InvalidArgument(std::string("map header lacks '") + key + "'");
  }

  PermittivityGrid grid;
  grid.nx = parse_int(fields["nx"]);
  grid.nz = parse_int(fields["nz"]);
  grid.h = parse_double(fields["h"]);
  grid.pml_cells = parse_int(fields["pml_cells"]);
  if (grid.nx <= 0 || grid.nz <= 0) throw InvalidArgument("map dimensions must be positive");
  grid.eps.resize(grid.size());

  if (fields["encoding"] == "csv") {
    for (int iz = 0; iz < grid.nz; ++iz) {
      if (!std::getline(in, line)) throw InvalidArgument("map file ended after " + std::to_string(iz) + " rows");
      std::string_view rest(line);
      for (int ix = 0; ix < grid.nx; ++ix) {
        const auto comma = rest.find(',');
        if ((comma == std::string_view::npos) != (ix == grid.nx - 1)) {
          throw InvalidArgument("row " + std::to_string(iz) + " does not have nx values");
        }
        grid.eps[grid.index(ix, iz)] = parse_double(rest.substr(0, comma));
        if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
      }
    }
  } else if (fields["encoding"] == "f64le") {
    for (auto& v : grid.eps) {
      std::uint64_t bits = 0;
      if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) throw InvalidArgument("map file is truncated");
      v = std::bit_cast<double>(to_little_endian(bits));
    }
  } else {
    throw InvalidArgument("unknown map encoding '" + fields["encoding"] + "'");
  }
  return grid;
}

void save_grid(const std::filesystem::path& path, const PermittivityGrid& grid, GridEncoding encoding,
               std::string_view comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  write_grid(out, grid, encoding, comment);
}

PermittivityGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_grid(in);
}

}  // namespace qtopo::em
