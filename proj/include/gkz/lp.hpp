#pragma once

#include <variant>
#include <vector>

#include "gkz/arith.hpp"

namespace gkz {

enum class Relation { Ge, Gt, Eq };

// coeffs . x + constant  (>= | > | ==)  0
struct LinearConstraint {
  RatVec coeffs;
  Rational constant = 0;
  Relation rel = Relation::Ge;
};

struct LpWitness {
  RatVec point;
};

// Multipliers y (one per constraint; nonnegative except on equations) with
// sum y_i coeffs_i = 0 and either sum y_i constant_i < 0, or = 0 with y_i > 0
// on some strict constraint. Scaled to a primitive integer vector.
struct FarkasCertificate {
  IntVec multipliers;
};

using LpResult = std::variant<LpWitness, FarkasCertificate>;

LpResult lp_feasible(std::size_t dim, const std::vector<LinearConstraint>& constraints);

// Homogeneous form: a.x >= 0, or a.x > 0 where strict[i] is set.
LpResult lp_feasible(const std::vector<RatVec>& inequalities, const std::vector<bool>& strict);

bool satisfies(const std::vector<LinearConstraint>& constraints, const RatVec& x);
bool certifies_infeasibility(const std::vector<LinearConstraint>& constraints, const IntVec& y);

}  // namespace gkz
