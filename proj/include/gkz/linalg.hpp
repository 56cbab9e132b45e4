#pragma once

#include <optional>
#include <vector>

#include "gkz/arith.hpp"

namespace gkz {

struct RowEchelon {
  RatMatrix reduced;                // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const std::vector<RatVec>& rows, std::size_t cols);

// Basis of {x : m x = 0}, one basis vector per free column.
std::vector<RatVec> nullspace(const RatMatrix& m);

// Some x with m x = b, or nullopt when inconsistent.
std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b);

Rational determinant(RatMatrix m);
Integer determinant(const IntMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

// Canonical basis of the row span: reduced echelon rows, scaled to primitive
// integers with a positive leading entry.
std::vector<IntVec> canonical_span_basis(const std::vector<RatVec>& rows, std::size_t cols);

// Orthogonal projection of v onto the complement of span(basis).
RatVec project_orthogonal(const RatVec& v, const std::vector<RatVec>& basis);

// Whether v lies in span(basis).
bool in_span(const RatVec& v, const std::vector<RatVec>& basis);

// Affine coordinates of point w.r.t. affinely independent points (all given in
// lifted coordinates, last entry 1). nullopt when point is outside the affine span.
std::optional<RatVec> affine_coordinates(const std::vector<RatVec>& lifted_basis, const RatVec& lifted_point);

}  // namespace gkz
