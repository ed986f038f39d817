#pragma once

#include <vector>

#include "qtopo/core/types.hpp"
#include "qtopo/em/fdfd.hpp"
#include "qtopo/em/grid.hpp"

namespace qtopo::design {

/// dF/d(theta) for every internal master-equation parameter. Symmetric pairs
/// count as one parameter: d_g(i, j) = d_g(j, i) = dF/dg_ij, and likewise for
/// d_gamma, whose diagonal holds dF/dgamma_ii. d_g has a zero diagonal.
struct FidelityGradient {
  RMatrix d_g;
  RMatrix d_gamma;

  /// Flattened as [g_ij (i<j)..., gamma_ij (i<j)..., gamma_ii...].
  std::vector<double> to_vector() const;
};

/// Steady-state fidelity to `target`; throws when the steady state fails.
double steady_fidelity(const MasterEqParams& p, const StateVector& target);

/// Central finite differences of the steady-state fidelity with step `step`
/// (gamma_0 units). Perturbed dissipative matrices that leave the PSD cone are
/// projected back onto it.
FidelityGradient fidelity_sensitivity(const MasterEqParams& p, const StateVector& target, double step = 1e-6);

/// First-order Born change of G(r_i, r_j) when the permittivity of `cell`
/// grows by delta_eps: k0^2 delta_eps h^2 E_i(cell) E_j(cell), where E_i is
/// the field of the unit source at emitter i (by reciprocity G(r_i, cell)).
CMatrix born_delta_g(std::span<const em::FieldSolution> fields, const em::PermittivityGrid& grid, em::GridCell cell,
                     double delta_eps, double k0);

}  // namespace qtopo::design
