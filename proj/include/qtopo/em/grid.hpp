#pragma once

#include <vector>

namespace qtopo::em {

/// Integer cell coordinates; ix runs along x (columns), iz along z (rows).
struct GridCell {
  int ix = 0;
  int iz = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Real permittivity on a uniform square grid, lengths in units of the
/// laser wavelength. Values are stored row-major with rows along z:
/// eps[iz * nx + ix]. The outer `pml_cells` cells on every side absorb.
struct PermittivityGrid {
  int nx = 0;
  int nz = 0;
  double h = 1.0 / 40.0;
  std::vector<double> eps;
  double eps_max = 9.0;
  int pml_cells = 12;
  double pml_strength = 12.0;  ///< peak imaginary coordinate stretch at the outer edge

  /// Uniform eps = 1 grid with an interior of extent_x x extent_z wavelengths.
  static PermittivityGrid vacuum(double extent_x, double extent_z, double h = 1.0 / 40.0,
                                 int pml_cells = 12);

  std::size_t index(int ix, int iz) const { return static_cast<std::size_t>(iz) * nx + ix; }
  std::size_t index(GridCell c) const { return index(c.ix, c.iz); }
  double at(GridCell c) const { return eps[index(c)]; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * nz; }

  bool in_pml(int ix, int iz) const {
    return ix < pml_cells || iz < pml_cells || ix >= nx - pml_cells || iz >= nz - pml_cells;
  }
  bool in_pml(GridCell c) const { return in_pml(c.ix, c.iz); }

  /// Throws InvalidArgument unless 1 <= eps <= eps_max everywhere, pml_cells >= 8
  /// and the array matches nx * nz.
  void validate() const;
};

/// Emitters placed on cells of the central column of the grid.
struct EmitterLayout {
  std::vector<GridCell> positions;
  double k0 = 6.283185307179586;  ///< laser wavenumber, 2 pi / lambda with lambda = 1

  /// n emitters centred in the grid, spaced by `separation` wavelengths along z.
  static EmitterLayout centered(const PermittivityGrid& grid, int n, double separation);

  /// Positions strictly increasing along z on a common column, spacing >= lambda/2,
  /// and at least pml_cells + 4 cells from every boundary.
  void validate(const PermittivityGrid& grid) const;

  int size() const { return static_cast<int>(positions.size()); }
};

}  // namespace qtopo::em
