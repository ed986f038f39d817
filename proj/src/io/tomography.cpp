#include "qtopo/io/tomography.hpp"

#include <cmath>

#include "qtopo/core/metrics.hpp"
#include "qtopo/core/states.hpp"
#include "qtopo/em/grid_io.hpp"
#include "qtopo/error.hpp"
#include "qtopo/io/artifacts.hpp"

namespace qtopo::io {

CMatrix w_block_basis() {
  CMatrix u(8, 8);
  u.col(0) = w_state().amplitudes();
  u.col(1) = w_alpha_state().amplitudes();
  u.col(2) = w_beta_state().amplitudes();
  int c = 3;
  for (const char* label : {"ggg", "gee", "ege", "eeg", "eee"}) u.col(c++) = basis_state(label).amplitudes();
  return u;
}

std::vector<std::string> w_block_labels() { return {"+++", "alpha", "beta", "ggg", "gee", "ege", "eeg", "eee"}; }

TomographyTable tomography_table(const DensityMatrix& rho, TomographyBasis basis) {
  TomographyTable t;
  if (basis == TomographyBasis::Bare) {
    t.labels = basis_labels(qubit_count(rho.dim()));
    t.entries = rho.entries();
  } else {
    if (rho.dim() != 8) throw InvalidArgument("tomography: the w-block basis needs a 3-qubit state");
    const CMatrix u = w_block_basis();
    t.labels = w_block_labels();
    t.entries = u.adjoint() * rho.entries() * u;
  }
  const double trace = t.entries.diagonal().real().sum();
  if (std::abs(trace - 1.0) > 1e-8) throw NumericalError("tomography: diagonal sums to " + em::format_double(trace));
  return t;
}

std::string tomography_csv(const TomographyTable& t) {
  std::vector<std::string> head{"row"};
  for (const auto& l : t.labels) head.push_back("re:" + l);
  for (const auto& l : t.labels) head.push_back("im:" + l);
  std::string out = csv_row(head);
  const auto n = static_cast<Eigen::Index>(t.labels.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::string> row{t.labels[i]};
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(em::format_double(t.entries(i, j).real()));
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(em::format_double(t.entries(i, j).imag()));
    out += csv_row(row);
  }
  return out;
}

}  // namespace qtopo::io
