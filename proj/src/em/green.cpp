#include "qtopo/em/green.hpp"

#include <cmath>

#include "qtopo/error.hpp"

namespace qtopo::em {

Complex freespace_green_2d(double k0, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("Green's function is singular at rho = 0");
  if (!(k0 > 0.0)) throw InvalidArgument("wavenumber must be positive");
  const double x = k0 * rho;
  const double j0 = std::cyl_bessel_j(0.0, x);
  const double y0 = std::cyl_neumann(0.0, x);
  // (i/4)(J0 + i Y0)
  return {-0.25 * y0, 0.25 * j0};
}

}  // namespace qtopo::em
