#pragma once

#include <array>
#include <span>

#include "qtopo/core/types.hpp"
#include "qtopo/pso/swarm.hpp"

namespace qtopo::pso {

/// The ten free parameters of three emitters invariant under exchanging
/// emitters 1 and 3 (gamma_0 units).
struct SymmetricTripleParams {
  double gamma1 = 1.0;  ///< gamma_11 = gamma_33
  double gamma2 = 1.0;
  double gamma12 = 0.0;  ///< = gamma_23
  double gamma13 = 0.0;
  double g12 = 0.0;  ///< = g_23
  double g13 = 0.0;
  double delta1 = 0.0;  ///< = delta_3
  double delta2 = 0.0;
  double omega1 = 0.0;  ///< = Omega_3
  double omega2 = 0.0;

  static constexpr std::size_t size = 10;
  /// Order: gamma1, gamma2, gamma12, gamma13, g12, g13, delta1, delta2, omega1, omega2.
  std::array<double, size> to_array() const;
  static SymmetricTripleParams from_array(std::span<const double> v);
  static const std::array<const char*, size>& names();

  /// sign(g12) = -sign(g13) and sign(gamma12) = -sign(gamma13).
  bool signs_ok() const;
};

/// Full three-emitter parameters. Throws InvalidArgument when a sign
/// constraint fails or gamma is not PSD.
MasterEqParams expand_params(const SymmetricTripleParams& p);

/// Steady-state fidelity to the W state, 0 for infeasible parameters or a
/// failed steady-state solve.
double objective_w_fidelity(const SymmetricTripleParams& p);

/// Same objective evaluated from precomputed per-parameter superoperators
/// (the Liouvillian is linear in all ten parameters), written in real
/// Hermitian coordinates so the solve is a real LU. Agrees with
/// objective_w_fidelity to round-off.
class WFidelityObjective {
 public:
  WFidelityObjective();
  double operator()(std::span<const double> v) const;
  /// Objective at swarm coordinates (see from_search_coordinates).
  double search(std::span<const double> x) const;

 private:
  std::array<RMatrix, SymmetricTripleParams::size> basis_;  ///< in real Hermitian coordinates
  RVector weights_;
};

/// Swarm coordinates (gamma1, gamma2, s, t, g12, g13, delta1, delta2, omega1,
/// omega2) with
///   gamma13 = s gamma1,  gamma12 = -sign(s) t sqrt((gamma1 + gamma13) gamma2 / 2),
/// s in [-1, 1], t in [0, 1]. Every point of that box has a PSD gamma matrix
/// obeying sign(gamma12) = -sign(gamma13), and the rank-deficient boundary,
/// where the optimum sits, corresponds to the faces s = 1 and t = 1.
SymmetricTripleParams from_search_coordinates(std::span<const double> x);

/// Inverse of from_search_coordinates for parameters with PSD gamma.
std::array<double, SymmetricTripleParams::size> to_search_coordinates(const SymmetricTripleParams& p);

/// Default box in search coordinates: diagonals in [0.05, 5], s in [-1, 1],
/// t in [0, 1], coherent couplings in [-3, 3], detunings in [-2, 2], Omega_1
/// in [1e-6, 2] (global drive phase fixed) and Omega_2 in [-2, 2].
PsoConfig default_triple_config();

}  // namespace qtopo::pso
