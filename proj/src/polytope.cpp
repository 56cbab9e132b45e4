#include "gkz/polytope.hpp"

#include <algorithm>
#include <set>

#include "gkz/errors.hpp"
#include "gkz/linalg.hpp"

namespace gkz {

namespace {

std::vector<IntVec> pick(const std::vector<IntVec>& v, const std::vector<std::size_t>& idx) {
  std::vector<IntVec> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

}  // namespace

LatticePolytope::LatticePolytope(const std::vector<IntVec>& input) {
  if (input.empty()) throw PreconditionError("polytope: no points");
  g_ = input.front().size();
  for (const auto& p : input)
    if (p.size() != g_) throw PreconditionError("polytope: inconsistent point dimensions");

  // Hull in provisional coordinates (x, 1), then re-origin at the first vertex.
  std::vector<IntVec> sorted = input;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<IntVec> lifted0;
  for (const auto& p : sorted) {
    IntVec l(p.begin(), p.end());
    l.push_back(1);
    lifted0.push_back(std::move(l));
  }
  auto c0 = RationalCone::from_generators(g_ + 1, lifted0);
  if (c0.dim() != g_ + 1 || !c0.is_pointed()) throw PreconditionError("polytope: not full-dimensional");
  for (const auto& r : c0.rays()) {
    // rays are primitive; with last coordinate 1 they are the lifted vertices
    if (r.back() != 1) throw Error("polytope: unexpected ray normalization");
    vertices_.emplace_back(r.begin(), r.end() - 1);
  }
  std::sort(vertices_.begin(), vertices_.end());

  std::vector<IntVec> lv;
  for (const auto& v : vertices_) lv.push_back(lift(v));
  cone_ = RationalCone::from_generators(g_ + 1, lv);

  IntVec lo = vertices_.front(), hi = vertices_.front();
  for (const auto& v : vertices_)
    for (std::size_t j = 0; j < g_; ++j) {
      if (v[j] < lo[j]) lo[j] = v[j];
      if (v[j] > hi[j]) hi[j] = v[j];
    }
  IntVec z = lo;
  while (true) {
    IntVec l = lift(z);
    if (cone_.contains(std::span<const Integer>(l))) points_.push_back(z);
    std::size_t j = 0;
    while (j < g_ && z[j] == hi[j]) {
      z[j] = lo[j];
      ++j;
    }
    if (j == g_) break;
    ++z[j];
  }
  std::sort(points_.begin(), points_.end());
  for (const auto& p : points_) lifted_.push_back(lift(p));
  lift_matrix_ = IntMatrix(g_ + 1, points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = 0; j <= g_; ++j) lift_matrix_(j, i) = lifted_[i][j];
  for (const auto& v : vertices_) vertex_indices_.push_back(*index_of(v));
}

IntVec LatticePolytope::lift(std::span<const Integer> x) const {
  IntVec out(g_ + 1);
  for (std::size_t j = 0; j < g_; ++j) out[j] = x[j] - origin()[j];
  out[g_] = 1;
  return out;
}

RatVec LatticePolytope::lift(std::span<const Rational> x) const {
  RatVec out(g_ + 1);
  for (std::size_t j = 0; j < g_; ++j) out[j] = x[j] - origin()[j];
  out[g_] = 1;
  return out;
}

bool LatticePolytope::contains(std::span<const Rational> x) const {
  RatVec l = lift(x);
  return cone_.contains(std::span<const Rational>(l));
}

std::optional<std::size_t> LatticePolytope::index_of(std::span<const Integer> p) const {
  IntVec key(p.begin(), p.end());
  auto it = std::lower_bound(points_.begin(), points_.end(), key);
  if (it == points_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

Integer LatticePolytope::normalized_volume() const { return gkz::normalized_volume(lifted_); }

PolytopePtr make_polytope(const std::vector<IntVec>& points) { return std::make_shared<const LatticePolytope>(points); }

const std::vector<IntVec>& lattice_points(const LatticePolytope& q) { return q.points(); }

std::vector<std::size_t> extreme_points(const std::vector<IntVec>& lifted, const std::vector<std::size_t>& indices) {
  if (indices.empty()) return {};
  const std::size_t d = lifted[indices.front()].size();
  auto c = RationalCone::from_generators(d, pick(lifted, indices));
  std::vector<std::size_t> out;
  std::set<IntVec> seen;
  for (auto i : indices)
    if (std::binary_search(c.rays().begin(), c.rays().end(), lifted[i]) && seen.insert(lifted[i]).second)
      out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> facet_vertex_sets(const std::vector<IntVec>& lifted,
                                                        const std::vector<std::size_t>& indices) {
  const std::size_t d = lifted[indices.front()].size();
  auto c = RationalCone::from_generators(d, pick(lifted, indices));
  std::vector<std::vector<std::size_t>> out;
  for (const auto& a : c.facets()) {
    std::vector<std::size_t> f;
    for (auto i : indices)
      if (dot(a, lifted[i]) == 0) f.push_back(i);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> pulling_triangulation(const std::vector<IntVec>& lifted,
                                                            const std::vector<std::size_t>& indices) {
  auto verts = extreme_points(lifted, indices);
  const std::size_t d = lifted[verts.front()].size();
  auto c = RationalCone::from_generators(d, pick(lifted, verts));
  const std::size_t k = c.dim();  // simplex has k vertices
  if (verts.size() == k) return {verts};
  std::size_t apex = verts.front();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : facet_vertex_sets(lifted, verts)) {
    if (std::find(f.begin(), f.end(), apex) != f.end()) continue;
    for (auto s : pulling_triangulation(lifted, f)) {
      s.push_back(apex);
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer normalized_volume(const std::vector<IntVec>& lifted) {
  std::vector<std::size_t> all(lifted.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Integer vol = 0;
  for (const auto& s : pulling_triangulation(lifted, all)) {
    IntMatrix m = IntMatrix::from_rows(pick(lifted, s));
    if (m.rows() != m.cols()) throw PreconditionError("normalized_volume: not full-dimensional");
    vol += abs(determinant(m));
  }
  return vol;
}

}  // namespace gkz
