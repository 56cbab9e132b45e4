#include "gkz/graded.hpp"

#include <algorithm>

#include "gkz/errors.hpp"

namespace gkz {

IntVec AmbientLattice::embed(std::span<const Integer> q) const {
  IntVec out(g + 1);
  for (std::size_t j = 0; j < g; ++j) out[j] = q[j] - origin[j];
  out[g] = 1;
  return out;
}

IntVec AmbientLattice::degree_covector() const {
  IntVec out(g + 1);
  out[g] = 1;
  return out;
}

GradedPoint GradedPoint::at(const AmbientLattice& amb, std::span<const Rational> q, const Integer& n) {
  if (n <= 0) throw PreconditionError("graded point: degree must be positive for a point");
  IntVec x(amb.g + 1);
  for (std::size_t j = 0; j < amb.g; ++j) {
    Rational s = (q[j] - amb.origin[j]) * n;
    if (s.get_den() != 1) throw PreconditionError("graded point: q is not in X̄(1/n)");
    x[j] = s.get_num();
  }
  x[amb.g] = n;
  GradedPoint p;
  p.x_ = std::move(x);
  return p;
}

GradedPoint GradedPoint::vector(std::span<const Integer> v) {
  GradedPoint p;
  p.x_.assign(v.begin(), v.end());
  p.x_.push_back(0);
  return p;
}

GradedPoint GradedPoint::from_lifted(IntVec xhat) {
  if (xhat.empty() || xhat.back() < 0) throw PreconditionError("graded point: negative degree");
  GradedPoint p;
  p.x_ = std::move(xhat);
  return p;
}

RatVec GradedPoint::point(const AmbientLattice& amb) const {
  if (degree() == 0) throw PreconditionError("graded point: degree 0 element is a vector");
  RatVec q(amb.g);
  for (std::size_t j = 0; j < amb.g; ++j) q[j] = Rational(x_[j], degree()) + amb.origin[j];
  for (auto& v : q) v.canonicalize();
  return q;
}

IntVec GradedPoint::vector_part() const {
  if (degree() != 0) throw PreconditionError("graded point: not a vector");
  return IntVec(x_.begin(), x_.end() - 1);
}

bool operator<(const GradedPoint& a, const GradedPoint& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.x_ < b.x_;
}

GradedPoint ll_add(const AmbientLattice& amb, const GradedPoint& a, const GradedPoint& b) {
  const Integer& t = a.degree();
  const Integer& s = b.degree();
  if (t == 0 && s == 0) {
    // (v,0) + (w,0) = (v + w, 0)
    return GradedPoint::vector(add(a.vector_part(), b.vector_part()));
  }
  if (t + s == 0) throw PreconditionError("ll_add: degrees cancel");
  if (s == 0) {
    // (p,t) + (v,0) = (p + v/t, t)
    RatVec p = a.point(amb);
    IntVec v = b.vector_part();
    for (std::size_t j = 0; j < amb.g; ++j) p[j] += Rational(v[j], t);
    return GradedPoint::at(amb, p, t);
  }
  if (t == 0) return ll_add(amb, b, a);
  // (p,t) + (q,s) = (t/(t+s) p + s/(t+s) q, t+s)
  RatVec p = a.point(amb), q = b.point(amb);
  RatVec r(amb.g);
  for (std::size_t j = 0; j < amb.g; ++j) r[j] = (t * p[j] + s * q[j]) / Rational(t + s);
  return GradedPoint::at(amb, r, t + s);
}

std::vector<GradedPoint> s_of_q(const LatticePolytope& q, int max_degree) {
  if (max_degree < 0) throw PreconditionError("s_of_q: negative degree bound");
  const std::size_t g = q.dim();
  std::vector<GradedPoint> out;
  out.push_back(GradedPoint::vector(IntVec(g)));
  IntVec lo(g), hi(g);
  for (std::size_t j = 0; j < g; ++j) {
    lo[j] = hi[j] = q.vertices().front()[j] - q.origin()[j];
    for (const auto& v : q.vertices()) {
      Integer c = v[j] - q.origin()[j];
      if (c < lo[j]) lo[j] = c;
      if (c > hi[j]) hi[j] = c;
    }
  }
  for (int n = 1; n <= max_degree; ++n) {
    IntVec z(g);
    for (std::size_t j = 0; j < g; ++j) z[j] = lo[j] * n;
    while (true) {
      IntVec x = z;
      x.push_back(n);
      if (q.cone().contains(std::span<const Integer>(x))) out.push_back(GradedPoint::from_lifted(std::move(x)));
      std::size_t j = 0;
      while (j < g && z[j] == hi[j] * n) {
        z[j] = lo[j] * n;
        ++j;
      }
      if (j == g) break;
      ++z[j];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RationalCone cone_over(const LatticePolytope& q) {
  RationalCone c = q.cone();
  c.with_lattice_name("XX");
  return c;
}

RatVec LinearizedFn::operator()(const GradedPoint& x) const {
  RatVec xr = to_rational(x.lifted());
  return f_.evaluate_lifted(xr);
}

LinearizedFn linearize(const PiecewiseAffineFn& phi) { return LinearizedFn(phi); }

}  // namespace gkz
