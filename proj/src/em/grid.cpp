#include "qtopo/em/grid.hpp"

#include <cmath>
#include <string>

#include "qtopo/error.hpp"

namespace qtopo::em {

PermittivityGrid PermittivityGrid::vacuum(double extent_x, double extent_z, double h,
                                          int pml_cells) {
  if (!(h > 0.0) || !(extent_x > 0.0) || !(extent_z > 0.0)) {
    throw InvalidArgument("grid extents and cell size must be positive");
  }
  PermittivityGrid g;
  g.h = h;
  g.pml_cells = pml_cells;
  g.nx = static_cast<int>(std::lround(extent_x / h)) + 2 * pml_cells;
  g.nz = static_cast<int>(std::lround(extent_z / h)) + 2 * pml_cells;
  g.eps.assign(g.size(), 1.0);
  g.validate();
  return g;
}

void PermittivityGrid::validate() const {
  if (nx <= 0 || nz <= 0 || !(h > 0.0)) throw InvalidArgument("grid dimensions must be positive");
  if (eps.size() != size()) throw InvalidArgument("permittivity array does not match nx * nz");
  if (pml_cells < 8) throw InvalidArgument("at least 8 PML cells are required");
  if (nx <= 2 * pml_cells || nz <= 2 * pml_cells) throw InvalidArgument("grid has no interior outside the PML");
  if (!(eps_max >= 1.0)) throw InvalidArgument("eps_max must be at least 1");
  if (!(pml_strength > 0.0)) throw InvalidArgument("pml_strength must be positive");
  for (double e : eps) {
    if (!(e >= 1.0 && e <= eps_max)) {
      throw InvalidArgument("permittivity value " + std::to_string(e) + " outside [1, eps_max]");
    }
  }
}

EmitterLayout EmitterLayout::centered(const PermittivityGrid& grid, int n, double separation) {
  if (n < 1) throw InvalidArgument("need at least one emitter");
  EmitterLayout layout;
  const int ix = grid.nx / 2;
  const int step = static_cast<int>(std::lround(separation / grid.h));
  const int first = grid.nz / 2 - (step * (n - 1)) / 2;
  for (int k = 0; k < n; ++k) layout.positions.push_back({ix, first + k * step});
  layout.validate(grid);
  return layout;
}

void EmitterLayout::validate(const PermittivityGrid& grid) const {
  if (positions.empty()) throw InvalidArgument("layout has no emitters");
  if (!(k0 > 0.0)) throw InvalidArgument("laser wavenumber must be positive");
  const int margin = grid.pml_cells + 4;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const auto& p = positions[k];
    if (p.ix < margin || p.iz < margin || p.ix >= grid.nx - margin || p.iz >= grid.nz - margin) {
      throw InvalidArgument("emitter " + std::to_string(k + 1) + " is too close to the PML");
    }
    if (k > 0) {
      const auto& q = positions[k - 1];
      if (p.ix != q.ix) throw InvalidArgument("emitters must share one column (the z axis)");
      if (p.iz <= q.iz) throw InvalidArgument("emitter positions must increase along z");
      if ((p.iz - q.iz) * grid.h < 0.5 - 1e-12) {
        throw InvalidArgument("emitter separation below half a wavelength");
      }
    }
  }
}

}  // namespace qtopo::em
