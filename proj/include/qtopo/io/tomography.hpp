#pragma once

#include <string>
#include <vector>

#include "qtopo/core/types.hpp"
#include "qtopo/io/config.hpp"

namespace qtopo::io {

/// Density matrix expressed in a labeled orthonormal basis.
struct TomographyTable {
  std::vector<std::string> labels;
  CMatrix entries;
};

/// Columns {W, alpha, beta, ggg, gee, ege, eeg, eee} in the bare 3-qubit
/// basis; the first three span the single-excitation block.
CMatrix w_block_basis();
std::vector<std::string> w_block_labels();

/// rho in the bare basis, or U^dag rho U with U = w_block_basis(). Throws
/// InvalidArgument on a dimension mismatch and NumericalError if the
/// diagonal does not sum to 1 within 1e-8.
TomographyTable tomography_table(const DensityMatrix& rho, TomographyBasis basis);

/// Header "row,re:<l>...,im:<l>..." then one row per basis label.
std::string tomography_csv(const TomographyTable& table);

}  // namespace qtopo::io
