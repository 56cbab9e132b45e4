#include "gkz/paving.hpp"

#include <algorithm>
#include <map>
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

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool intersect_properly(const std::vector<IntVec>& lifted, const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b) {
  const std::size_t d = lifted[a.front()].size();
  std::vector<IntVec> ineqs;
  for (auto i : a) ineqs.push_back(lifted[i]);
  for (auto i : b) ineqs.push_back(negate(lifted[i]));
  auto sep = RationalCone::from_inequalities(d, ineqs);
  IntVec h = sep.relative_interior_point();
  std::vector<std::size_t> ta, tb;
  for (auto i : a)
    if (dot(h, lifted[i]) == 0) ta.push_back(i);
  for (auto i : b)
    if (dot(h, lifted[i]) == 0) tb.push_back(i);
  auto ea = extreme_points(lifted, ta), eb = extreme_points(lifted, tb);
  std::set<IntVec> pa, pb;
  for (auto i : ea) pa.insert(lifted[i]);
  for (auto i : eb) pb.insert(lifted[i]);
  return pa == pb;
}

void Paving::build(PolytopePtr q, std::vector<std::vector<std::size_t>> cell_vertices) {
  q_ = std::move(q);
  std::vector<IntVec> pts;
  for (std::size_t i = 0; i < q_->size(); ++i) pts.push_back(q_->lifted(i));
  const std::size_t d = q_->dim() + 1;

  for (auto& v : cell_vertices) std::sort(v.begin(), v.end());
  std::sort(cell_vertices.begin(), cell_vertices.end());
  cells_.clear();
  cones_.clear();
  for (const auto& v : cell_vertices) {
    auto cone = RationalCone::from_generators(d, pick(pts, v));
    Cell c;
    c.vertices = v;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (cone.contains(std::span<const Integer>(pts[i]))) c.points.push_back(i);
    cells_.push_back(std::move(c));
    cones_.push_back(std::move(cone));
  }

  walls_.clear();
  std::map<std::vector<std::size_t>, std::pair<std::size_t, IntVec>> open;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (const auto& a : cones_[c].facets()) {
      std::vector<std::size_t> f;
      for (auto i : cells_[c].vertices)
        if (dot(a, pts[i]) == 0) f.push_back(i);
      auto it = open.find(f);
      if (it == open.end()) {
        open.emplace(f, std::make_pair(c, a));
      } else {
        walls_.push_back({f, it->second.first, c, it->second.second});
        open.erase(it);
      }
    }
  }
  std::sort(walls_.begin(), walls_.end(), [](const Wall& x, const Wall& y) { return x.vertices < y.vertices; });
}

Paving Paving::trusted(PolytopePtr q, const std::vector<std::vector<std::size_t>>& cell_vertices) {
  Paving p;
  p.build(std::move(q), cell_vertices);
  return p;
}

Paving Paving::from_cells(PolytopePtr q, const std::vector<std::vector<std::size_t>>& cells) {
  if (cells.empty()) throw InvalidPaving("paving has no cells");
  std::vector<IntVec> lifted;
  for (std::size_t i = 0; i < q->size(); ++i) lifted.push_back(q->lifted(i));
  const std::size_t d = q->dim() + 1;
  std::vector<std::vector<std::size_t>> verts;
  for (const auto& c : cells) {
    if (c.empty()) throw InvalidPaving("empty cell");
    for (auto i : c)
      if (i >= q->size()) throw InvalidPaving("cell refers to point index " + std::to_string(i) + " outside I");
    std::vector<std::size_t> s = c;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto cone = RationalCone::from_generators(d, pick(lifted, s));
    if (cone.dim() != d) throw InvalidPaving("cell {" + join(s) + "} is not full-dimensional");
    verts.push_back(extreme_points(lifted, s));
  }
  std::sort(verts.begin(), verts.end());
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    if (verts[i] == verts[i + 1]) throw InvalidPaving("repeated cell {" + join(verts[i]) + "}");
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!intersect_properly(lifted, verts[i], verts[j]))
        throw InvalidPaving("cells {" + join(verts[i]) + "} and {" + join(verts[j]) +
                            "} do not meet in a common face");
  Integer vol = 0;
  for (const auto& v : verts) vol += normalized_volume(pick(lifted, v));
  if (vol != q->normalized_volume()) throw InvalidPaving("cells do not cover Q");
  Paving p;
  p.build(std::move(q), verts);
  return p;
}

std::vector<std::size_t> Paving::used_points() const {
  std::set<std::size_t> s;
  for (const auto& c : cells_) s.insert(c.vertices.begin(), c.vertices.end());
  return {s.begin(), s.end()};
}

std::vector<std::size_t> Paving::empty_points() const {
  auto used = used_points();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < q_->size(); ++i)
    if (!std::binary_search(used.begin(), used.end(), i)) out.push_back(i);
  return out;
}

bool Paving::is_triangulation() const {
  for (const auto& c : cells_)
    if (c.vertices.size() != q_->dim() + 1) return false;
  return true;
}

std::vector<std::vector<std::size_t>> Paving::all_cells() const {
  std::vector<IntVec> lifted;
  for (std::size_t i = 0; i < q_->size(); ++i) lifted.push_back(q_->lifted(i));
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> stack;
  for (const auto& c : cells_) stack.push_back(c.vertices);
  while (!stack.empty()) {
    auto v = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(v).second || v.size() == 1) continue;
    for (auto f : facet_vertex_sets(lifted, v)) stack.push_back(extreme_points(lifted, f));
  }
  std::vector<std::vector<std::size_t>> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<std::size_t> Paving::cells_containing(std::span<const Rational> x) const {
  RatVec l = q_->lift(x);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cones_[i].contains(std::span<const Rational>(l))) out.push_back(i);
  return out;
}

std::optional<std::size_t> Paving::cell_containing(std::span<const Rational> x) const {
  RatVec l = q_->lift(x);
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cones_[i].contains(std::span<const Rational>(l))) return i;
  return std::nullopt;
}

bool Paving::refines(const Paving& coarser) const {
  for (const auto& c : cones_) {
    bool inside = false;
    for (std::size_t j = 0; j < coarser.cells_.size() && !inside; ++j) inside = coarser.cones_[j].contains(c);
    if (!inside) return false;
  }
  return true;
}

std::string Paving::key() const {
  std::string s;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) s += "|";
    s += join(cells_[i].vertices);
  }
  return s;
}

PiecewiseAffineFn::PiecewiseAffineFn(Paving paving, std::vector<RatMatrix> pieces)
    : paving_(std::move(paving)), pieces_(std::move(pieces)) {
  if (pieces_.size() != paving_.cells().size()) throw PreconditionError("piecewise affine: one piece per cell");
  value_dim_ = pieces_.empty() ? 1 : pieces_.front().rows();
  for (const auto& m : pieces_)
    if (m.rows() != value_dim_ || m.cols() != paving_.polytope().dim() + 1)
      throw PreconditionError("piecewise affine: piece shape mismatch");
}

RatVec PiecewiseAffineFn::evaluate_lifted(std::span<const Rational> xhat) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!paving_.cell_cone(i).contains(xhat)) continue;
    RatVec out(value_dim_);
    for (std::size_t r = 0; r < value_dim_; ++r) out[r] = dot(pieces_[i].row(r), xhat);
    return out;
  }
  throw PreconditionError("piecewise affine: point outside Q");
}

RatVec PiecewiseAffineFn::evaluate(std::span<const Rational> x) const {
  RatVec l = paving_.polytope().lift(x);
  return evaluate_lifted(l);
}

RatVec PiecewiseAffineFn::evaluate_point(std::size_t i) const {
  RatVec l = to_rational(paving_.polytope().lifted(i));
  return evaluate_lifted(l);
}

Rational PiecewiseAffineFn::scalar(std::span<const Rational> x) const {
  if (value_dim_ != 1) throw PreconditionError("piecewise affine: not scalar valued");
  return evaluate(x)[0];
}

bool PiecewiseAffineFn::is_continuous() const {
  const auto& q = paving_.polytope();
  for (const auto& w : paving_.interior_walls())
    for (auto v : w.vertices) {
      RatVec l = to_rational(q.lifted(v));
      for (std::size_t r = 0; r < value_dim_; ++r)
        if (dot(pieces_[w.plus].row(r), l) != dot(pieces_[w.minus].row(r), l)) return false;
    }
  return true;
}

namespace {

PiecewiseAffineFn combine(const PiecewiseAffineFn& a, const PiecewiseAffineFn& b, int sign) {
  if (!(a.paving() == b.paving()) || a.value_dim() != b.value_dim())
    throw PreconditionError("piecewise affine: operands on different pavings");
  std::vector<RatMatrix> pieces = a.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t r = 0; r < pieces[i].rows(); ++r)
      for (std::size_t c = 0; c < pieces[i].cols(); ++c) pieces[i](r, c) += sign * b.pieces()[i](r, c);
  return PiecewiseAffineFn(a.paving(), std::move(pieces));
}

}  // namespace

PiecewiseAffineFn operator+(const PiecewiseAffineFn& a, const PiecewiseAffineFn& b) { return combine(a, b, 1); }
PiecewiseAffineFn operator-(const PiecewiseAffineFn& a, const PiecewiseAffineFn& b) { return combine(a, b, -1); }

PiecewiseAffineFn PiecewiseAffineFn::scaled(const Rational& s) const {
  std::vector<RatMatrix> pieces = pieces_;
  for (auto& m : pieces)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) *= s;
  return PiecewiseAffineFn(paving_, std::move(pieces));
}

std::vector<BendingData> bending_parameters(const PiecewiseAffineFn& f, const RationalCone* monoid) {
  std::vector<BendingData> out;
  const std::size_t k = f.value_dim();
  for (const auto& w : f.paving().interior_walls()) {
    const RatMatrix& plus = f.pieces()[w.plus];
    const RatMatrix& minus = f.pieces()[w.minus];
    std::size_t j = 0;
    while (w.normal[j] == 0) ++j;
    BendingData b{w, w.normal, RatVec(k), true};
    for (std::size_t r = 0; r < k; ++r) {
      b.p[r] = (plus(r, j) - minus(r, j)) / Rational(w.normal[j]);
      for (std::size_t c = 0; c < plus.cols(); ++c)
        if (plus(r, c) - minus(r, c) != b.p[r] * w.normal[c])
          throw PreconditionError("bending_parameters: function is not continuous across a wall");
    }
    if (monoid) {
      b.in_monoid = monoid->contains(std::span<const Rational>(b.p));
    } else {
      for (const auto& x : b.p)
        if (x < 0) b.in_monoid = false;
    }
    out.push_back(std::move(b));
  }
  return out;
}

Paving regular_subdivision(const PolytopePtr& q, const RatVec& psi) {
  if (psi.size() != q->size()) throw PreconditionError("regular_subdivision: lift has wrong length");
  Integer l = 1;
  for (const auto& x : psi) l = lcm(l, x.get_den());
  const std::size_t d = q->dim() + 1;
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < q->size(); ++i) {
    IntVec v = q->lifted(i);
    v.push_back(psi[i].get_num() * (l / psi[i].get_den()));
    gens.push_back(std::move(v));
  }
  IntVec up(d + 1);
  up[d] = 1;
  gens.push_back(up);
  auto hull = RationalCone::from_generators(d + 1, gens);

  std::vector<IntVec> lifted;
  for (std::size_t i = 0; i < q->size(); ++i) lifted.push_back(q->lifted(i));
  std::vector<std::vector<std::size_t>> cells;
  for (const auto& a : hull.facets()) {
    if (a[d] <= 0) continue;
    std::vector<std::size_t> contact;
    for (std::size_t i = 0; i < q->size(); ++i)
      if (dot(a, gens[i]) == 0) contact.push_back(i);
    cells.push_back(extreme_points(lifted, contact));
  }
  return Paving::trusted(q, cells);
}

CoherenceResult is_coherent(const Paving& p) {
  const auto& q = p.polytope();
  const std::size_t n = q.size();
  const std::size_t d = q.dim() + 1;
  std::vector<LinearConstraint> cs;
  for (const auto& cell : p.cells()) {
    // affinely independent basis of the cell, greedily in index order
    std::vector<std::size_t> basis;
    for (auto v : cell.vertices) {
      std::vector<RatVec> rows;
      for (auto b : basis) rows.push_back(to_rational(q.lifted(b)));
      rows.push_back(to_rational(q.lifted(v)));
      if (rank(rows, d) == rows.size()) basis.push_back(v);
      if (basis.size() == d) break;
    }
    std::vector<RatVec> bl;
    for (auto b : basis) bl.push_back(to_rational(q.lifted(b)));
    for (std::size_t w = 0; w < n; ++w) {
      if (std::find(basis.begin(), basis.end(), w) != basis.end()) continue;
      auto beta = affine_coordinates(bl, to_rational(q.lifted(w)));
      LinearConstraint c;
      c.coeffs.assign(n, 0);
      c.coeffs[w] = 1;
      for (std::size_t t = 0; t < basis.size(); ++t) c.coeffs[basis[t]] -= (*beta)[t];
      bool vertex = std::binary_search(cell.vertices.begin(), cell.vertices.end(), w);
      c.rel = vertex ? Relation::Eq : Relation::Gt;
      cs.push_back(std::move(c));
    }
  }
  auto r = lp_feasible(n, cs);
  if (auto* w = std::get_if<LpWitness>(&r)) {
    IntVec prim = primitive(w->point);
    return CoherenceWitness{to_rational(prim)};
  }
  return std::get<FarkasCertificate>(r);
}

PiecewiseAffineFn interpolate(const Paving& t, const std::vector<RatVec>& values) {
  const auto& q = t.polytope();
  const std::size_t d = q.dim() + 1;
  if (values.size() != q.size()) throw PreconditionError("interpolate: one value per lattice point");
  const std::size_t k = values.empty() ? 1 : values.front().size();
  std::vector<RatMatrix> pieces;
  for (const auto& cell : t.cells()) {
    if (cell.vertices.size() != d) throw PreconditionError("interpolate: cell is not a simplex");
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = q.lifted(cell.vertices[i])[j];
    auto inv = inverse(m);
    if (!inv) throw PreconditionError("interpolate: degenerate simplex");
    // piece * lifted(v_i) = value(v_i)  =>  piece = V^T * (m^{-1})^T
    RatMatrix piece(k, d);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        Rational s = 0;
        for (std::size_t i = 0; i < d; ++i) s += values[cell.vertices[i]][r] * (*inv)(c, i);
        piece(r, c) = s;
      }
    pieces.push_back(std::move(piece));
  }
  return PiecewiseAffineFn(t, std::move(pieces));
}

PiecewiseAffineFn interpolate(const Paving& t, const RatVec& psi) {
  std::vector<RatVec> values;
  for (const auto& x : psi) values.push_back(RatVec{x});
  return interpolate(t, values);
}

Paving star_subdivision(const Paving& t, std::size_t omega) {
  const auto& q = t.polytope();
  if (omega >= q.size()) throw PreconditionError("star_subdivision: point index out of range");
  auto used = t.used_points();
  if (std::binary_search(used.begin(), used.end(), omega))
    throw PreconditionError("star_subdivision: point is already a vertex");
  std::vector<IntVec> lifted;
  for (std::size_t i = 0; i < q.size(); ++i) lifted.push_back(q.lifted(i));
  const std::size_t d = q.dim() + 1;
  auto contains = [&](const std::vector<std::size_t>& face, std::size_t pt) {
    auto c = RationalCone::from_generators(d, pick(lifted, face));
    return c.contains(std::span<const Integer>(lifted[pt]));
  };
  // carrier: the face with fewest vertices containing omega
  std::vector<std::size_t> carrier;
  for (const auto& f : t.all_cells())
    if (contains(f, omega) && (carrier.empty() || f.size() < carrier.size())) carrier = f;
  std::vector<std::vector<std::size_t>> cells;
  for (const auto& cell : t.cells()) {
    if (!is_subset(carrier, cell.vertices)) {
      cells.push_back(cell.vertices);
      continue;
    }
    for (auto f : facet_vertex_sets(lifted, cell.vertices)) {
      if (contains(f, omega)) continue;
      f.push_back(omega);
      std::sort(f.begin(), f.end());
      cells.push_back(std::move(f));
    }
  }
  return Paving::from_cells(t.polytope_ptr(), cells);
}

}  // namespace gkz
