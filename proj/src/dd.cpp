#include "detail/dd.hpp"

#include <boost/dynamic_bitset.hpp>

#include "gkz/lattice.hpp"

namespace gkz::detail {

namespace {

struct Ray {
  IntVec v;
  boost::dynamic_bitset<> zeros;  // processed constraints vanishing on v
};

IntVec combine(const Integer& a, const IntVec& x, const Integer& b, const IntVec& y) {
  IntVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return primitive(out);
}

}  // namespace

DdResult double_description(std::size_t dim, const std::vector<IntVec>& inequalities,
                            const std::vector<IntVec>& equations) {
  DdResult out;
  // Equations first: lineality starts as their integer kernel.
  std::vector<IntVec> lines;
  if (equations.empty()) {
    lines = IntMatrix::identity(dim).to_rows();
  } else {
    lines = integer_kernel(IntMatrix::from_rows(equations, dim));
  }
  const std::size_t m = inequalities.size();
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const IntVec& a = inequalities[k];
    std::size_t pivot = lines.size();
    Integer ap;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      ap = dot(a, lines[i]);
      if (ap != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < lines.size()) {
      IntVec l0 = lines[pivot];
      if (ap < 0) {
        l0 = negate(l0);
        ap = -ap;
      }
      std::vector<IntVec> rest;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == pivot) continue;
        Integer al = dot(a, lines[i]);
        rest.push_back(al == 0 ? lines[i] : combine(ap, lines[i], -al, l0));
      }
      for (auto& r : rays) {
        Integer ar = dot(a, r.v);
        if (ar != 0) r.v = combine(ap, r.v, -ar, l0);
        r.zeros.resize(m);
        r.zeros.set(k);
      }
      Ray nr{l0, boost::dynamic_bitset<>(m)};
      // former line: every previous constraint vanished on it
      for (std::size_t j = 0; j < k; ++j) nr.zeros.set(j);
      rays.push_back(std::move(nr));
      lines = std::move(rest);
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      rays[i].zeros.resize(m);
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
      else rays[i].zeros.set(k);
    }
    if (neg.empty()) continue;

    const std::size_t need = dim >= lines.size() + 2 ? dim - lines.size() - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        boost::dynamic_bitset<> common = rays[p].zeros & rays[n].zeros;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == n) continue;
          if (common.is_subset_of(rays[t].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{combine(val[p], rays[n].v, -val[n], rays[p].v), common};
        nr.zeros.set(k);
        next.push_back(std::move(nr));
      }
    }
    std::vector<Ray> kept;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) kept.push_back(std::move(rays[i]));
    for (auto& r : next) kept.push_back(std::move(r));
    rays = std::move(kept);
  }

  out.lines = std::move(lines);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

}  // namespace gkz::detail
