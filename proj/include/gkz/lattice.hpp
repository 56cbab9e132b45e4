#pragma once

#include <optional>
#include <vector>

#include "gkz/arith.hpp"

namespace gkz {

// Row-style normal forms. hermite = u * m, smith = p * m * q, with u, p, q
// unimodular. Hermite pivots are positive and entries above a pivot are reduced
// into [0, pivot). Smith diagonal entries are nonnegative and each divides the next.
struct HermiteSmith {
  IntMatrix hermite;
  IntMatrix u;
  IntMatrix smith;
  IntMatrix p;
  IntMatrix q;
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const;  // nonzero diagonal of smith
};

HermiteSmith hermite_smith(const IntMatrix& m);

// Hermite form only; returns (h, u) with h = u * m.
std::pair<IntMatrix, IntMatrix> hermite(const IntMatrix& m);
std::pair<IntMatrix, IntMatrix> hermite_with_rank(const IntMatrix& m, std::size_t& rank);

// Basis (Hermite-reduced rows) of {x in Z^n : m x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix& m);

// Hermite-reduced basis of the lattice spanned by the given integer vectors.
std::vector<IntVec> lattice_basis(const std::vector<IntVec>& gens, std::size_t dim);

// Basis of the saturation (span_R(gens) ∩ Z^n).
std::vector<IntVec> saturation_basis(const std::vector<IntVec>& gens, std::size_t dim);

// Index of the lattice spanned by gens inside its saturation.
Integer saturation_index(const std::vector<IntVec>& gens, std::size_t dim);

// Product of nonzero invariant factors, i.e. the torsion order of Z^cols / rowspan.
Integer torsion_order(const IntMatrix& m);

// Coordinates z with sum z_i basis_i = v when v lies in the lattice, else nullopt.
std::optional<IntVec> lattice_coordinates(const std::vector<IntVec>& basis, const IntVec& v);
std::optional<RatVec> rational_coordinates(const std::vector<IntVec>& basis, const RatVec& v);

// Index [big : small] of full-rank sublattices of the same rank (both given by bases).
Integer sublattice_index(const std::vector<IntVec>& big, const std::vector<IntVec>& small);

}  // namespace gkz
