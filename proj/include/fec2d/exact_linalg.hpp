// SPDX-License-Identifier: MIT
//
// Exact rational linear algebra on Eigen dense matrices: rank, nullity,
// inversion, nullspace and basis-completion, all with deterministic
// first-nonzero pivoting and no tolerances.

#ifndef FEC2D_EXACT_LINALG_HPP
#define FEC2D_EXACT_LINALG_HPP

#include <functional>
#include <optional>
#include <vector>

#include "fec2d/numbers.hpp"

namespace fec2d {

/// Observer invoked with the working matrix after each completed Bareiss
/// pivot step (used by tests to assert fraction-free intermediates).
using BareissObserver = std::function<void(const RatMatrix&)>;

/// Fraction-free Bareiss elimination to row echelon form.
/// Pivots are chosen as the first row with a nonzero entry in the current
/// column, scanning columns left to right. Returns the echelon matrix and
/// the rank. For integer input every intermediate entry stays integral.
std::pair<RatMatrix, Index> bareissEchelon(RatMatrix m, const BareissObserver& observer = {});

Index rank(const RatMatrix& m);

/// cols(m) - rank(m).
Index nullity(const RatMatrix& m);

bool isZero(const RatMatrix& m);

/// Exact inverse of a square nonsingular matrix (fraction-free Gauss-Jordan
/// after clearing row denominators). Throws SingularMatrixError.
RatMatrix invert(const RatMatrix& m);

/// Matrix product (exact); thin named wrapper over operator*.
inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) { return a * b; }

/// Lowest-index-greedy completion of a full-column-rank subspace to a basis
/// of the ambient space by standard basis vectors. Returns the chosen
/// standard-basis indices (ambientDim - cols of them). Throws on dependent
/// subspace columns.
std::vector<Index> complementBasis(const RatMatrix& subspaceCols, Index ambientDim);

/// Columns spanning the kernel {x : m x = 0}, in the deterministic
/// free-variable parametrization of the reduced row echelon form.
RatMatrix nullspaceBasis(const RatMatrix& m);

/// Solve m x = rhs exactly for square nonsingular m.
RatVector solve(const RatMatrix& m, const RatVector& rhs);

/// Solve a full-column-rank rectangular system exactly; nullopt when rhs is
/// outside the column space.
std::optional<RatVector> solveConsistent(const RatMatrix& m, const RatVector& rhs);

}  // namespace fec2d

#endif
