#include "qtopo/em/fdfd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/UmfPackSupport>

#include "qtopo/error.hpp"

namespace qtopo::em {

struct HelmholtzSolver::Factorization {
  Eigen::UmfPackLU<Eigen::SparseMatrix<Complex>> lu;
};

namespace {

// Stretch factor s = 1 + i sigma at a (possibly half-integer) cell coordinate.
// sigma grows cubically from the inner PML edge to pml_strength at the outer edge.
Complex stretch(double coord, int n, const PermittivityGrid& g) {
  const double inner_lo = g.pml_cells - 0.5;
  const double inner_hi = n - g.pml_cells - 0.5;
  double depth = 0.0;
  if (coord < inner_lo) depth = (inner_lo - coord) / g.pml_cells;
  if (coord > inner_hi) depth = (coord - inner_hi) / g.pml_cells;
  return {1.0, g.pml_strength * depth * depth * depth};
}

}  // namespace

HelmholtzSolver::HelmholtzSolver(const PermittivityGrid& grid, double k0)
    : grid_(grid), k0_(k0), lu_(std::make_unique<Factorization>()) {
  grid_.validate();
  if (!(k0 > 0.0)) throw InvalidArgument("wavenumber must be positive");
  matrix_ = assemble(grid_);
  // refinement steps triple the solve cost; the residual check below guards accuracy
  lu_->lu.umfpackControl()(UMFPACK_IRSTEP) = 0;
  lu_->lu.analyzePattern(matrix_);
  refactor(grid_);
}

HelmholtzSolver::~HelmholtzSolver() = default;

Eigen::SparseMatrix<Complex> HelmholtzSolver::assemble(const PermittivityGrid& g) const {
  const int nx = g.nx;
  const int nz = g.nz;
  const double inv_h2 = 1.0 / (g.h * g.h);
  std::vector<Complex> sx(nx), sz(nz), sx_half(nx + 1), sz_half(nz + 1);
  for (int i = 0; i < nx; ++i) sx[i] = stretch(i, nx, g);
  for (int j = 0; j < nz; ++j) sz[j] = stretch(j, nz, g);
  for (int i = 0; i <= nx; ++i) sx_half[i] = stretch(i - 0.5, nx, g);  // between i-1 and i
  for (int j = 0; j <= nz; ++j) sz_half[j] = stretch(j - 0.5, nz, g);

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(g.size() * 5);
  for (int iz = 0; iz < nz; ++iz) {
    for (int ix = 0; ix < nx; ++ix) {
      const auto row = static_cast<int>(g.index(ix, iz));
      const Complex west = sz[iz] / sx_half[ix] * inv_h2;
      const Complex east = sz[iz] / sx_half[ix + 1] * inv_h2;
      const Complex south = sx[ix] / sz_half[iz] * inv_h2;
      const Complex north = sx[ix] / sz_half[iz + 1] * inv_h2;
      const Complex diag = -(west + east + south + north) + k0_ * k0_ * g.eps[row] * sx[ix] * sz[iz];
      entries.emplace_back(row, row, diag);
      if (ix > 0) entries.emplace_back(row, row - 1, west);
      if (ix + 1 < nx) entries.emplace_back(row, row + 1, east);
      if (iz > 0) entries.emplace_back(row, row - nx, south);
      if (iz + 1 < nz) entries.emplace_back(row, row + nx, north);
    }
  }
  Eigen::SparseMatrix<Complex> a(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

void HelmholtzSolver::refactor(const PermittivityGrid& grid) {
  grid.validate();
  if (grid.nx != grid_.nx || grid.nz != grid_.nz || grid.h != grid_.h || grid.pml_cells != grid_.pml_cells ||
      grid.pml_strength != grid_.pml_strength) {
    throw InvalidArgument("refactor requires the same grid geometry");
  }
  grid_ = grid;
  matrix_ = assemble(grid_);
  lu_->lu.factorize(matrix_);
  if (lu_->lu.info() != Eigen::Success) {
    throw NumericalError("Helmholtz factorization failed (UMFPACK status " +
                         std::to_string(lu_->lu.umfpackFactorizeReturncode()) + ")");
  }
}

FieldSolution HelmholtzSolver::solve_point_source(GridCell source, int source_index) const {
  if (source.ix < 0 || source.iz < 0 || source.ix >= grid_.nx || source.iz >= grid_.nz) {
    throw InvalidArgument("source outside the grid");
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid_.size()));
  rhs[static_cast<Eigen::Index>(grid_.index(source))] = -1.0 / (grid_.h * grid_.h);
  Eigen::VectorXcd x = lu_->lu.solve(rhs);
  if (lu_->lu.info() != Eigen::Success || !x.allFinite()) {
    throw NumericalError("Helmholtz solve failed");
  }
  FieldSolution out;
  out.field.assign(x.data(), x.data() + x.size());
  out.source_index = source_index;
  out.source = source;
  out.nx = grid_.nx;
  out.nz = grid_.nz;
  const double res = interior_residual(out);
  if (!(res < 1e-8)) {
    throw NumericalError("Helmholtz solve residual " + std::to_string(res) + " exceeds 1e-8");
  }
  return out;
}

double HelmholtzSolver::interior_residual(const FieldSolution& solution) const {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  Eigen::Map<const Eigen::VectorXcd> x(solution.field.data(), n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[static_cast<Eigen::Index>(grid_.index(solution.source))] = -1.0 / (grid_.h * grid_.h);
  const Eigen::VectorXcd r = matrix_ * x - rhs;
  double num = 0.0;
  for (int iz = 0; iz < grid_.nz; ++iz) {
    for (int ix = 0; ix < grid_.nx; ++ix) {
      if (!grid_.in_pml(ix, iz)) num += std::norm(r[static_cast<Eigen::Index>(grid_.index(ix, iz))]);
    }
  }
  return std::sqrt(num) / rhs.norm();
}

FieldSolution fdfd_solve(const PermittivityGrid& grid, const EmitterLayout& layout, int source_index) {
  layout.validate(grid);
  if (source_index < 0 || source_index >= layout.size()) throw InvalidArgument("source index out of range");
  HelmholtzSolver solver(grid, layout.k0);
  return solver.solve_point_source(layout.positions[source_index], source_index);
}

std::vector<FieldSolution> solve_all_emitters(const HelmholtzSolver& solver, const EmitterLayout& layout) {
  layout.validate(solver.grid());
  std::vector<FieldSolution> out;
  out.reserve(layout.positions.size());
  for (int k = 0; k < layout.size(); ++k) out.push_back(solver.solve_point_source(layout.positions[k], k));
  return out;
}

double vacuum_self_reference(const PermittivityGrid& grid, const EmitterLayout& layout) {
  PermittivityGrid vac = grid;
  std::fill(vac.eps.begin(), vac.eps.end(), 1.0);
  const auto field = fdfd_solve(vac, layout, 0);
  return field.at(field.source).imag();
}

}  // namespace qtopo::em
