#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "qtopo/core/types.hpp"
#include "qtopo/em/grid.hpp"

namespace qtopo::em {

/// Field radiated by a unit point source at one emitter, sampled on every
/// cell of the grid. For a uniform eps = 1 map it approximates the outgoing
/// 2-D Green's function (i/4) H0(k0 rho).
struct FieldSolution {
  std::vector<Complex> field;
  int source_index = 0;
  GridCell source;
  int nx = 0;
  int nz = 0;

  Complex at(GridCell c) const { return field[static_cast<std::size_t>(c.iz) * nx + c.ix]; }
};

/// Sparse LU factorization of the discrete Helmholtz operator
///   (laplacian + k0^2 eps) G = -delta / h^2
/// on the 5-point stencil with complex coordinate stretching in the PML.
/// Rows are scaled by s_x s_z so that the matrix is complex symmetric, which
/// makes the discrete Green's function exactly reciprocal.
class HelmholtzSolver {
 public:
  HelmholtzSolver(const PermittivityGrid& grid, double k0);
  ~HelmholtzSolver();
  HelmholtzSolver(const HelmholtzSolver&) = delete;
  HelmholtzSolver& operator=(const HelmholtzSolver&) = delete;

  /// Re-assembles and re-factorizes for a new map on the same grid geometry,
  /// reusing the symbolic analysis.
  void refactor(const PermittivityGrid& grid);

  FieldSolution solve_point_source(GridCell source, int source_index = 0) const;

  /// ||A x - b|| / ||b|| over cells outside the PML.
  double interior_residual(const FieldSolution& solution) const;

  const PermittivityGrid& grid() const { return grid_; }
  double k0() const { return k0_; }

 private:
  Eigen::SparseMatrix<Complex> assemble(const PermittivityGrid& grid) const;

  PermittivityGrid grid_;
  double k0_;
  Eigen::SparseMatrix<Complex> matrix_;
  struct Factorization;
  std::unique_ptr<Factorization> lu_;
};

/// Field of the unit source at emitter `source_index`.
FieldSolution fdfd_solve(const PermittivityGrid& grid, const EmitterLayout& layout, int source_index);

/// One factorization shared by all emitters of the layout.
std::vector<FieldSolution> solve_all_emitters(const HelmholtzSolver& solver, const EmitterLayout& layout);

/// Im G(r, r) of a single source in vacuum on the same grid geometry, the
/// normalization that maps Green's-function samples to gamma_0 units.
double vacuum_self_reference(const PermittivityGrid& grid, const EmitterLayout& layout);

}  // namespace qtopo::em
