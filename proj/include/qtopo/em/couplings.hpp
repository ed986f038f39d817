#pragma once

#include <span>

#include "qtopo/core/types.hpp"
#include "qtopo/em/fdfd.hpp"

namespace qtopo::em {

struct PsdProjection {
  RMatrix matrix;
  double magnitude = 0.0;  ///< Frobenius norm of the removed part
  bool warning = false;    ///< magnitude > 0.05 ||input||
};

/// Nearest positive semi-definite matrix (negative eigenvalues clamped to 0).
/// Inputs already PSD within 1e-10 are returned unchanged.
PsdProjection psd_project(const RMatrix& m);

/// Coherent and dissipative couplings in gamma_0 units.
struct CouplingSet {
  RMatrix g;       ///< Re G_ij / (2 ref), zero diagonal
  RMatrix gamma;   ///< Im G_ij / ref, PSD-projected
  double purcell = 0.0;             ///< geometric mean of diag(gamma)
  double projection_magnitude = 0.0;
  bool projection_warning = false;
};

/// Samples G(r_i, r_j) from the per-emitter fields (averaging the two
/// reciprocal samples) and normalizes by the vacuum self-term.
CouplingSet couplings_from_fields(std::span<const FieldSolution> fields, const EmitterLayout& layout,
                                  double freespace_ref);

/// Symmetrized Green's-function samples G(r_i, r_j).
CMatrix green_matrix(std::span<const FieldSolution> fields, const EmitterLayout& layout);

/// Couplings from a Green's-function matrix (shared by the field path and the
/// perturbative path of the design loop).
CouplingSet couplings_from_green(const CMatrix& green, double freespace_ref);

}  // namespace qtopo::em
