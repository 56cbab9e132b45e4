#pragma once

#include <vector>

#include "gkz/arith.hpp"
#include "gkz/cone.hpp"
#include "gkz/paving.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

// X = Z^g, the affine lattice X̄ over it with an explicit origin, and
// 𝕏 = 𝕃(X̄) ≅ Z^{g+1} with the degree as last coordinate.
struct AmbientLattice {
  std::size_t g = 0;
  IntVec origin;

  explicit AmbientLattice(std::size_t dim) : g(dim), origin(dim) {}
  AmbientLattice(std::size_t dim, IntVec o) : g(dim), origin(std::move(o)) {}
  static AmbientLattice of(const LatticePolytope& q) { return {q.dim(), q.origin()}; }

  IntVec embed(std::span<const Integer> q) const;  // (q - o, 1)
  IntVec degree_covector() const;
};

// (q, n) with q in X̄(1/n) for n > 0, or a vector v of X for n = 0. Stored
// canonically as the integer vector (n (q - o), n) of 𝕏.
class GradedPoint {
 public:
  static GradedPoint at(const AmbientLattice& amb, std::span<const Rational> q, const Integer& n);
  static GradedPoint vector(std::span<const Integer> v);
  static GradedPoint from_lifted(IntVec xhat);

  const IntVec& lifted() const { return x_; }
  const Integer& degree() const { return x_.back(); }
  bool is_vector() const { return degree() == 0; }
  RatVec point(const AmbientLattice& amb) const;  // requires degree > 0
  IntVec vector_part() const;                     // requires degree == 0

  friend bool operator==(const GradedPoint& a, const GradedPoint& b) { return a.x_ == b.x_; }
  // (degree, point) order
  friend bool operator<(const GradedPoint& a, const GradedPoint& b);

 private:
  IntVec x_;
};

// Addition of 𝕃(X̄), one branch per case of degrees.
GradedPoint ll_add(const AmbientLattice& amb, const GradedPoint& a, const GradedPoint& b);

// Graded points of S(Q) with degree <= max_degree, sorted by (degree, point).
std::vector<GradedPoint> s_of_q(const LatticePolytope& q, int max_degree);

RationalCone cone_over(const LatticePolytope& q);

// φ̃ on C(Q): deg(x) φ(x / deg(x)) for deg > 0, and 0 at the origin.
class LinearizedFn {
 public:
  explicit LinearizedFn(PiecewiseAffineFn f) : f_(std::move(f)) {}
  RatVec operator()(const GradedPoint& x) const;
  RatVec operator()(std::span<const Rational> xhat) const { return f_.evaluate_lifted(xhat); }
  const PiecewiseAffineFn& base() const { return f_; }

 private:
  PiecewiseAffineFn f_;
};

LinearizedFn linearize(const PiecewiseAffineFn& phi);

}  // namespace gkz
