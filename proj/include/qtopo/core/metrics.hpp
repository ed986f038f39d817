#pragma once

#include "qtopo/core/types.hpp"

namespace qtopo {

/// <phi|rho|phi>, clamped to [0, 1]. Throws on dimension mismatch or when the
/// raw value leaves [-1e-10, 1 + 1e-10].
double fidelity(const DensityMatrix& rho, const StateVector& phi);

/// tr(rho^2)
double purity(const DensityMatrix& rho);

/// <basis_index|rho|basis_index>
double population(const DensityMatrix& rho, Eigen::Index basis_index);

/// Reduced state after tracing out qubit `k` (0-based, qubit 0 is the most
/// significant factor) of an n-qubit density matrix.
DensityMatrix partial_trace(const DensityMatrix& rho, int k);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Number of qubits for a 2^n-dimensional matrix; throws otherwise.
int qubit_count(Eigen::Index dim);

/// Trace norm ||a - b||_1 of the difference of two Hermitian matrices.
double trace_distance_norm(const CMatrix& a, const CMatrix& b);

}  // namespace qtopo
