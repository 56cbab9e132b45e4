#pragma once

#include <vector>

#include "gkz/arith.hpp"

namespace gkz::detail {

struct DdResult {
  std::vector<IntVec> rays;   // extreme rays modulo lineality (not yet canonical)
  std::vector<IntVec> lines;  // basis of the lineality space
};

// Generators of {x in R^dim : a.x >= 0 for a in inequalities, e.x = 0 for e in
// equations}. Constraints are inserted in the order given.
DdResult double_description(std::size_t dim, const std::vector<IntVec>& inequalities,
                            const std::vector<IntVec>& equations);

}  // namespace gkz::detail
