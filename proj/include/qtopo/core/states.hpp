#pragma once

#include <string>
#include <vector>

#include "qtopo/core/types.hpp"

namespace qtopo {

enum class Parity { Even = +1, Odd = -1 };

/// (|ge> + |eg>)/sqrt2 for Even, (|ge> - |eg>)/sqrt2 for Odd.
StateVector bell_state(Parity parity);

/// Symmetric W state (|gge> + |geg> + |egg>)/sqrt3.
StateVector w_state();

/// The two single-excitation states orthogonal to the W state,
/// (|gge> - a|geg> - b|egg>)/sqrt3 and (|gge> - b|geg> - a|egg>)/sqrt3
/// with a = (1+sqrt3)/2, b = (1-sqrt3)/2.
StateVector w_alpha_state();
StateVector w_beta_state();

/// Computational basis state from a label such as "gge".
StateVector basis_state(const std::string& label);

/// Labels of the computational basis in storage order ("gg", "ge", ...).
std::vector<std::string> basis_labels(int n_qubits);

}  // namespace qtopo
