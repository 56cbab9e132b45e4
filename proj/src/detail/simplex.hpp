#pragma once

#include <vector>

#include "gkz/arith.hpp"

namespace gkz::detail {

enum class Sense { Le, Eq, Ge };

// maximize c.x subject to rows[i].x (sense[i]) rhs[i], x >= 0.
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<RatVec> rows;
  std::vector<Sense> sense;
  RatVec rhs;
  RatVec objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RatVec x;
  Rational value;
};

// Two-phase tableau simplex with Bland's rule, exact rationals.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace gkz::detail
