#pragma once

#include <span>
#include <vector>

#include "evosplit/grid.hpp"

namespace evosplit {

/// True if |diag[i]| strictly exceeds the sum of the off-diagonal magnitudes
/// in every row.
bool is_strictly_diagonally_dominant(const TridiagonalOperator& T);

/// Thomas algorithm without pivoting. Intended for diagonally dominant
/// systems; throws NumericalError if a pivot degenerates.
std::vector<double> solve_thomas(const TridiagonalOperator& T, std::span<const double> rhs);

/// Gaussian elimination with partial pivoting specialised to tridiagonal
/// systems (fill-in limited to a second superdiagonal). Throws NumericalError
/// if the matrix is singular to working precision.
std::vector<double> solve_tridiagonal_pivot(const TridiagonalOperator& T,
                                            std::span<const double> rhs);

/// Dominance-checked dispatch: Thomas when strictly dominant, pivoting solve
/// otherwise.
std::vector<double> solve_tridiagonal(const TridiagonalOperator& T,
                                      std::span<const double> rhs);

}  // namespace evosplit
