#include "qtopo/design/sensitivity.hpp"

#include "qtopo/core/lindblad.hpp"
#include "qtopo/core/metrics.hpp"
#include "qtopo/em/couplings.hpp"
#include "qtopo/error.hpp"

namespace qtopo::design {

std::vector<double> FidelityGradient::to_vector() const {
  const auto n = d_gamma.rows();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(d_g(i, j));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(d_gamma(i, j));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(d_gamma(i, i));
  return out;
}

double steady_fidelity(const MasterEqParams& p, const StateVector& target) {
  return fidelity(steady_state(build_liouvillian(p)).rho, target);
}

namespace {

double perturbed_fidelity(MasterEqParams p, const StateVector& target) {
  p.gamma = em::psd_project(p.gamma).matrix;
  return steady_fidelity(p, target);
}

}  // namespace

FidelityGradient fidelity_sensitivity(const MasterEqParams& p, const StateVector& target, double step) {
  p.validate();
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const int n = p.n_qubits;
  FidelityGradient grad{RMatrix::Zero(n, n), RMatrix::Zero(n, n)};

  auto central = [&](auto&& set) {
    MasterEqParams plus = p;
    MasterEqParams minus = p;
    set(plus, step);
    set(minus, -step);
    return (perturbed_fidelity(plus, target) - perturbed_fidelity(minus, target)) / (2.0 * step);
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i != j) {
        const double dg = central([&](MasterEqParams& q, double s) {
          q.g(i, j) += s;
          q.g(j, i) = q.g(i, j);
        });
        grad.d_g(i, j) = grad.d_g(j, i) = dg;
      }
      const double dgamma = central([&](MasterEqParams& q, double s) {
        q.gamma(i, j) += s;
        q.gamma(j, i) = q.gamma(i, j);
      });
      grad.d_gamma(i, j) = grad.d_gamma(j, i) = dgamma;
    }
  }
  return grad;
}

CMatrix born_delta_g(std::span<const em::FieldSolution> fields, const em::PermittivityGrid& grid, em::GridCell cell,
                     double delta_eps, double k0) {
  if (cell.ix < 0 || cell.iz < 0 || cell.ix >= grid.nx || cell.iz >= grid.nz) {
    throw InvalidArgument("cell outside the grid");
  }
  if (grid.in_pml(cell)) throw InvalidArgument("cell lies inside the PML");
  const auto n = static_cast<Eigen::Index>(fields.size());
  const double scale = k0 * k0 * delta_eps * grid.h * grid.h;
  CMatrix dG(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      dG(i, j) = dG(j, i) = scale * fields[i].at(cell) * fields[j].at(cell);
    }
  }
  return dG;
}

}  // namespace qtopo::design
