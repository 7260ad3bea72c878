#pragma once

// Exact integer and rational matrix algebra: Smith and Hermite normal forms
// with transform tracking, unimodular inverses, and rational elimination.
// All pivots are chosen deterministically so normal forms are canonical.

#include "torsion/exact.hpp"

#include <cstddef>
#include <vector>

namespace torsion {

using Mat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rational>>;

Mat identity_matrix(std::size_t n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
bool mat_equal(const Mat& a, const Mat& b);
Int mat_det(const Mat& a);

// U * A * V = D with U, V unimodular and D diagonal, each diagonal entry
// nonnegative and dividing the next.
struct SmithDecomposition {
  Mat d;
  Mat u;
  Mat v;
  std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const Mat& a);

// Row-style Hermite normal form of the lattice spanned by the rows:
// pivots positive, entries above each pivot reduced into [0, pivot),
// zero rows dropped.  Unique per row lattice.
Mat hermite_normal_form(Mat rows);

// Exact inverse of a unimodular integer matrix.
Mat unimodular_inverse(const Mat& a);

// Exact inverse over Q; throws SingularMatrix when det = 0.
RatMat rational_inverse(const Mat& a);

// In-place reduced row echelon form over Q; returns the rank.
std::size_t rational_rref(RatMat& m);

// True when v lies in the row span of an RREF matrix.
bool in_row_span(const RatMat& rref, std::vector<Rational> v);

}  // namespace torsion
