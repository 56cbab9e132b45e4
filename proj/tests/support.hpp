#pragma once

// Shared fixtures and brute-force oracles for the unit tests. The oracles use
// only dense rational linear algebra so they stay independent of the cone and
// lower-hull code they check.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "gkz/arith.hpp"
#include "gkz/linalg.hpp"
#include "gkz/polytope.hpp"

namespace testing {

using namespace gkz;

inline IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline PolytopePtr segment() { return make_polytope({iv({0}), iv({2})}); }
inline PolytopePtr square() { return make_polytope({iv({0, 0}), iv({1, 0}), iv({0, 1}), iv({1, 1})}); }
inline PolytopePtr two_simplex2() { return make_polytope({iv({0, 0}), iv({2, 0}), iv({0, 2})}); }
inline PolytopePtr unit_triangle() { return make_polytope({iv({0, 0}), iv({1, 0}), iv({0, 1})}); }
inline PolytopePtr segment3() { return make_polytope({iv({0}), iv({3})}); }
inline PolytopePtr reeve(long r) {
  return make_polytope({iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, r})});
}

// The desk polytopes used for the property tests.
inline std::vector<std::pair<std::string, PolytopePtr>> desk_polytopes() {
  return {{"segment", segment()}, {"square", square()}, {"2simplex", two_simplex2()}, {"segment3", segment3()}};
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Affine function (covector on lifted coordinates) through the given lifted
// points, if they are affinely independent and span.
inline std::optional<RatVec> affine_through(const LatticePolytope& q, const std::vector<std::size_t>& pts,
                                            const RatVec& psi) {
  const std::size_t d = q.dim() + 1;
  RatMatrix m(d, d);
  RatVec b(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = q.lifted(pts[i])[j];
    b[i] = psi[pts[i]];
  }
  if (determinant(m) == 0) return std::nullopt;
  return solve(m, b);
}

// Brute-force lower hull: every affine function through g+1 independent
// points lying weakly below all lifted points; cells are the contact sets.
struct BruteHull {
  std::vector<RatVec> facets;                     // affine covectors
  std::set<std::vector<std::size_t>> contacts;    // contact sets (all touching points)
};

inline BruteHull brute_lower_hull(const LatticePolytope& q, const RatVec& psi) {
  BruteHull h;
  std::set<RatVec> seen;
  for (const auto& s : subsets(q.size(), q.dim() + 1)) {
    auto a = affine_through(q, s, psi);
    if (!a) continue;
    bool below = true;
    std::vector<std::size_t> contact;
    for (std::size_t i = 0; i < q.size(); ++i) {
      Rational v = dot(q.lifted(i), *a);
      if (v > psi[i]) {
        below = false;
        break;
      }
      if (v == psi[i]) contact.push_back(i);
    }
    if (!below || !seen.insert(*a).second) continue;
    h.facets.push_back(*a);
    h.contacts.insert(contact);
  }
  return h;
}

// Lower convex envelope at a lattice point: max over hull facets.
inline Rational envelope(const LatticePolytope& q, const BruteHull& h, std::size_t i) {
  Rational best = dot(q.lifted(i), h.facets.front());
  for (const auto& a : h.facets) best = std::max(best, Rational(dot(q.lifted(i), a)));
  return best;
}

inline RatVec random_lift(std::mt19937& rng, std::size_t n, int range = 20) {
  std::uniform_int_distribution<int> dist(-range, range);
  RatVec psi(n);
  for (auto& x : psi) x = Rational(dist(rng), 1 + rng() % 3);
  for (auto& x : psi) x.canonicalize();
  return psi;
}

}  // namespace testing
