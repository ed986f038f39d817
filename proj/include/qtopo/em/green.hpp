#pragma once

#include "qtopo/core/types.hpp"

namespace qtopo::em {

/// Outgoing free-space Green's function of the 2-D Helmholtz operator,
/// (i/4) H0^(1)(k0 rho). Throws InvalidArgument for rho <= 0.
Complex freespace_green_2d(double k0, double rho);

}  // namespace qtopo::em
