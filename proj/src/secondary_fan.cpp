#include "gkz/secondary_fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "gkz/errors.hpp"
#include "gkz/lattice.hpp"
#include "gkz/linalg.hpp"

namespace gkz {

namespace {

RatMatrix columns_of(const LatticePolytope& q, const std::vector<std::size_t>& idx) {
  const std::size_t d = q.dim() + 1;
  RatMatrix m(d, idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t r = 0; r < d; ++r) m(r, c) = q.lifted(idx[c])[r];
  return m;
}

std::vector<std::size_t> apex_of(const Cell& cell, const std::vector<std::size_t>& wall) {
  std::vector<std::size_t> out;
  std::set_difference(cell.vertices.begin(), cell.vertices.end(), wall.begin(), wall.end(), std::back_inserter(out));
  return out;
}

// Barycentric coordinates of point i in the simplex cell (vertex order).
std::optional<RatVec> barycentric(const LatticePolytope& q, const std::vector<std::size_t>& simplex, std::size_t i) {
  std::vector<RatVec> basis;
  for (auto v : simplex) basis.push_back(to_rational(q.lifted(v)));
  auto a = affine_coordinates(basis, to_rational(q.lifted(i)));
  if (!a) return std::nullopt;
  for (const auto& x : *a)
    if (x < 0) return std::nullopt;
  return a;
}

}  // namespace

LatticeLContext::LatticeLContext(PolytopePtr q) : q_(std::move(q)) {
  basis_ = integer_kernel(q_->lift_matrix());
  std::vector<IntVec> rows;
  for (std::size_t r = 0; r < q_->lift_matrix().rows(); ++r) rows.push_back(q_->lift_matrix().row_vec(r));
  aff_ = lattice_basis(rows, n());
  torsion_ = gkz::torsion_order(q_->lift_matrix());
  const std::size_t r = rank();
  RatMatrix gram(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram(i, j) = dot(basis_[i], basis_[j]);
  gram_inverse_ = r ? *inverse(gram) : RatMatrix(0, 0);
}

RatVec LatticeLContext::to_lstar(std::span<const Rational> v) const {
  RatVec y(rank());
  for (std::size_t i = 0; i < rank(); ++i) y[i] = dot(basis_[i], v);
  return y;
}

RatVec LatticeLContext::from_lstar(std::span<const Rational> y) const {
  RatVec lambda(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) lambda[i] += gram_inverse_(i, j) * y[j];
  return from_l_coordinates(lambda);
}

RatVec LatticeLContext::from_l_coordinates(std::span<const Rational> lambda) const {
  RatVec v(n());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t k = 0; k < n(); ++k) v[k] += lambda[i] * basis_[i][k];
  return v;
}

IntVec LatticeLContext::l_coordinates(const IntVec& c) const {
  auto z = lattice_coordinates(basis_, c);
  if (!z) throw PreconditionError("l_coordinates: vector is not in 𝕃");
  return *z;
}

RatVec LatticeLContext::l_coordinates(const RatVec& c) const {
  auto z = rational_coordinates(basis_, c);
  if (!z) throw PreconditionError("l_coordinates: vector is not in 𝕃_Q");
  return *z;
}

bool LatticeLContext::in_l(std::span<const Integer> v) const {
  return lattice_coordinates(basis_, IntVec(v.begin(), v.end())).has_value();
}

RatVec project_to_lstar(std::span<const Rational> v, const LatticeLContext& ctx) { return ctx.to_lstar(v); }

bool GkzChamber::contains_lift(std::span<const Rational> psi) const {
  for (const auto& c : tilde_inequalities)
    if (dot(c, psi) < 0) return false;
  return true;
}

IntVec fold_inequality(const Triangulation& t, const Wall& w) {
  const auto& q = t.polytope();
  const auto& plus = t.cells()[w.plus];
  const auto& minus = t.cells()[w.minus];
  auto ap = apex_of(plus, w.vertices);
  auto am = apex_of(minus, w.vertices);
  if (ap.size() != 1 || am.size() != 1) throw PreconditionError("fold_inequality: cells are not simplices");
  std::vector<std::size_t> all = w.vertices;
  all.push_back(ap[0]);
  all.push_back(am[0]);
  auto ker = nullspace(columns_of(q, all));
  if (ker.size() != 1) throw PreconditionError("fold_inequality: degenerate wall");
  RatVec rel = ker[0];
  if (rel[rel.size() - 2] < 0) rel = negate(rel);
  RatVec full(q.size());
  for (std::size_t i = 0; i < all.size(); ++i) full[all[i]] += rel[i];
  return primitive(full);
}

GkzChamber gkz_cone(const LatticeLContext& ctx, const Triangulation& t) {
  if (!t.is_triangulation()) throw PreconditionError("gkz_cone: not a triangulation");
  const auto& q = ctx.polytope();
  GkzChamber ch;
  ch.triangulation = t;
  for (const auto& w : t.interior_walls()) ch.tilde_inequalities.push_back(fold_inequality(t, w));
  ch.i_empty = t.empty_points();
  for (auto omega : ch.i_empty) {
    for (const auto& cell : t.cells()) {
      auto a = barycentric(q, cell.vertices, omega);
      if (!a) continue;
      RatVec full(q.size());
      full[omega] = 1;
      for (std::size_t k = 0; k < cell.vertices.size(); ++k) full[cell.vertices[k]] -= (*a)[k];
      ch.tilde_inequalities.push_back(primitive(full));
      break;
    }
  }
  std::sort(ch.tilde_inequalities.begin(), ch.tilde_inequalities.end());
  ch.tilde_inequalities.erase(std::unique(ch.tilde_inequalities.begin(), ch.tilde_inequalities.end()),
                              ch.tilde_inequalities.end());
  ch.tilde_cone = RationalCone::from_inequalities(q.size(), ch.tilde_inequalities);
  std::vector<IntVec> lam;
  for (const auto& c : ch.tilde_inequalities) lam.push_back(ctx.l_coordinates(c));
  ch.cone = RationalCone::from_inequalities(ctx.rank(), lam);
  ch.cone.with_lattice_name("L*");
  return ch;
}

std::optional<std::vector<std::size_t>> find_regular_simplex(const LatticePolytope& q) {
  const std::size_t n = q.size(), k = q.dim() + 1;
  std::vector<std::size_t> cur;
  std::optional<std::vector<std::size_t>> found;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (found) return;
    if (cur.size() == k) {
      IntMatrix m(k, k);
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < k; ++r) m(r, c) = q.lifted(cur[c])[r];
      if (abs(determinant(m)) == 1) found = cur;
      return;
    }
    for (std::size_t i = start; i < n && !found; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return found;
}

PsiMap psi_map(const LatticeLContext& ctx, std::optional<std::vector<std::size_t>> sigma) {
  const auto& q = ctx.polytope();
  if (!sigma) {
    sigma = find_regular_simplex(q);
    if (!sigma) throw NoRegularSimplex("no regular simplex in Q");
  }
  const std::size_t k = q.dim() + 1;
  if (sigma->size() != k) throw PreconditionError("psi_map: sigma has the wrong size");
  RatMatrix m = columns_of(q, *sigma);
  if (abs(determinant(m)) != 1) throw PreconditionError("psi_map: sigma is not a regular simplex");
  RatMatrix minv = *inverse(m);
  PsiMap out;
  out.sigma = *sigma;
  for (std::size_t w = 0; w < q.size(); ++w) {
    IntVec v(q.size());
    v[w] += 1;
    for (std::size_t a = 0; a < k; ++a) {
      Rational beta = 0;
      for (std::size_t r = 0; r < k; ++r) beta += minv(a, r) * q.lifted(w)[r];
      v[(*sigma)[a]] -= as_integer(beta);
    }
    out.l_coords.push_back(ctx.l_coordinates(v));
    out.values.push_back(std::move(v));
  }
  return out;
}

// Oracle enumeration ---------------------------------------------------------

namespace {

// A rational point interior to Q and off every hyperplane spanned by g
// affinely independent points of I (given in lifted coordinates).
RatVec generic_point(const LatticePolytope& q) {
  const std::size_t d = q.dim() + 1;
  RatVec centroid(d);
  for (auto v : q.vertex_indices())
    for (std::size_t j = 0; j < d; ++j) centroid[j] += q.lifted(v)[j];
  for (auto& x : centroid) x /= Rational(static_cast<long>(q.vertex_indices().size()));

  std::vector<IntVec> normals;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == q.dim()) {
      RatMatrix m(cur.size(), d);
      for (std::size_t r = 0; r < cur.size(); ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = q.lifted(cur[r])[c];
      auto ker = nullspace(m);
      if (ker.size() == 1) normals.push_back(primitive(ker[0]));
      return;
    }
    for (std::size_t i = start; i < q.size(); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);

  for (long den = 101;; den = den * 7 + 1) {
    RatVec p = centroid;
    Rational t(1, den);
    Rational s = t;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      p[j] += s;
      s *= t;
    }
    bool ok = q.cone().in_relative_interior(p);
    for (const auto& n : normals)
      if (ok && dot(n, p) == 0) ok = false;
    if (ok) return p;
  }
}

}  // namespace

std::vector<Triangulation> enumerate_all_triangulations(const PolytopePtr& qp) {
  const auto& q = *qp;
  const std::size_t d = q.dim() + 1;
  std::vector<std::vector<std::size_t>> simplices;
  for (const auto& s : [&] {
         std::vector<std::vector<std::size_t>> out;
         std::vector<std::size_t> cur;
         std::function<void(std::size_t)> rec = [&](std::size_t start) {
           if (cur.size() == d) {
             out.push_back(cur);
             return;
           }
           for (std::size_t i = start; i < q.size(); ++i) {
             cur.push_back(i);
             rec(i + 1);
             cur.pop_back();
           }
         };
         rec(0);
         return out;
       }()) {
    if (determinant(columns_of(q, s)) != 0) simplices.push_back(s);
  }
  const std::size_t ns = simplices.size();

  std::vector<std::vector<char>> compat(ns, std::vector<char>(ns, 0));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = i + 1; j < ns; ++j)
      compat[i][j] = compat[j][i] = intersect_properly(q.lifted_points(), simplices[i], simplices[j]);

  // facet -> (simplex, side of its apex); boundary facets are skipped
  struct Side {
    std::size_t simplex;
    int sign;
  };
  std::map<std::vector<std::size_t>, std::vector<Side>> by_facet;
  std::vector<std::vector<std::vector<std::size_t>>> interior_facets(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t drop = 0; drop < d; ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t k = 0; k < d; ++k)
        if (k != drop) f.push_back(simplices[s][k]);
      bool boundary = false;
      for (const auto& a : q.cone().facets()) {
        bool all = true;
        for (auto v : f) all = all && dot(a, q.lifted(v)) == 0;
        if (all) boundary = true;
      }
      if (boundary) continue;
      RatMatrix m(f.size(), d);
      for (std::size_t r = 0; r < f.size(); ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = q.lifted(f[r])[c];
      RatVec n = nullspace(m).front();
      Rational side = dot(q.lifted(simplices[s][drop]), n);
      by_facet[f].push_back({s, side > 0 ? 1 : -1});
      interior_facets[s].push_back(f);
    }
  }

  RatVec p = generic_point(q);
  std::vector<std::size_t> start;
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<RatVec> basis;
    for (auto v : simplices[s]) basis.push_back(to_rational(q.lifted(v)));
    auto a = affine_coordinates(basis, p);
    if (a && std::all_of(a->begin(), a->end(), [](const Rational& x) { return x > 0; })) start.push_back(s);
  }

  std::set<std::vector<std::vector<std::size_t>>> found;
  std::vector<std::size_t> chosen;
  std::function<void()> rec = [&] {
    // first unmatched interior facet
    std::map<std::vector<std::size_t>, int> count;
    for (auto s : chosen)
      for (const auto& f : interior_facets[s]) ++count[f];
    const std::vector<std::size_t>* open = nullptr;
    int open_sign = 0;
    for (auto s : chosen) {
      for (const auto& f : interior_facets[s])
        if (count[f] == 1 && !open) {
          open = &f;
          for (const auto& side : by_facet[f])
            if (side.simplex == s) open_sign = side.sign;
        }
    }
    if (!open) {
      std::vector<std::vector<std::size_t>> cells;
      for (auto s : chosen) cells.push_back(simplices[s]);
      std::sort(cells.begin(), cells.end());
      found.insert(cells);
      return;
    }
    for (const auto& side : by_facet[*open]) {
      if (side.sign == open_sign) continue;
      if (std::find(chosen.begin(), chosen.end(), side.simplex) != chosen.end()) continue;
      bool ok = true;
      for (auto s : chosen) ok = ok && compat[s][side.simplex];
      if (!ok) continue;
      chosen.push_back(side.simplex);
      rec();
      chosen.pop_back();
    }
  };
  for (auto s : start) {
    chosen = {s};
    rec();
  }

  std::vector<Triangulation> out;
  for (const auto& cells : found) out.push_back(Paving::from_cells(qp, cells));
  std::sort(out.begin(), out.end(), [](const Paving& a, const Paving& b) { return a.key() < b.key(); });
  return out;
}

// Traversal -----------------------------------------------------------------

namespace {

std::vector<RegularTriangulation> traverse(const LatticeLContext& ctx) {
  const auto& q = ctx.polytope();
  const std::size_t r = ctx.rank();

  // placing-style start: ψ_i = K^i for growing K
  RatVec psi0(q.size());
  Triangulation t0;
  for (long k = 2;; k *= 2) {
    Rational v = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
      psi0[i] = v;
      v *= k;
    }
    t0 = regular_subdivision(ctx.polytope_ptr(), psi0);
    if (t0.is_triangulation()) break;
    if (k > (1L << 40)) throw PreconditionError("traversal: no starting triangulation");
  }

  std::map<std::string, RegularTriangulation> seen;
  std::vector<std::string> queue;
  std::map<std::string, GkzChamber> chambers;
  auto chamber_for = [&](const Triangulation& t) -> const GkzChamber& {
    auto it = chambers.find(t.key());
    if (it == chambers.end()) it = chambers.emplace(t.key(), gkz_cone(ctx, t)).first;
    return it->second;
  };

  seen.emplace(t0.key(), RegularTriangulation{t0, psi0});
  queue.push_back(t0.key());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Triangulation t = seen.at(queue[head]).triangulation;
    const GkzChamber here = chamber_for(t);
    for (const auto& lambda : here.cone.facets()) {
      auto face = here.cone.intersect_hyperplane(lambda);
      RatVec yf = to_rational(face.relative_interior_point());
      Rational m = 1;
      for (int iter = 0;; ++iter) {
        if (iter > 80) throw PreconditionError("traversal: could not cross a facet");
        RatVec y(r);
        for (std::size_t j = 0; j < r; ++j) y[j] = m * yf[j] - lambda[j];
        RatVec psi = ctx.from_lstar(y);
        auto t2 = regular_subdivision(ctx.polytope_ptr(), psi);
        m *= 2;
        if (!t2.is_triangulation() || t2 == t) continue;
        const auto& there = chamber_for(t2);
        if (!there.cone.in_relative_interior(y)) continue;
        auto common = here.cone.intersect(there.cone);
        if (common.dim() + 1 != r || !common.contains(std::span<const Rational>(yf))) continue;
        if (seen.emplace(t2.key(), RegularTriangulation{t2, psi}).second) queue.push_back(t2.key());
        break;
      }
    }
  }
  std::vector<RegularTriangulation> out;
  for (auto& [k, v] : seen) out.push_back(std::move(v));
  return out;
}

}  // namespace

std::vector<RegularTriangulation> enumerate_regular_triangulations(const LatticeLContext& ctx,
                                                                   EnumerationMethod method) {
  if (method == EnumerationMethod::Traversal) return traverse(ctx);
  std::vector<RegularTriangulation> out;
  for (auto& t : enumerate_all_triangulations(ctx.polytope_ptr())) {
    auto res = is_coherent(t);
    if (auto* w = std::get_if<CoherenceWitness>(&res)) out.push_back({std::move(t), w->lift});
  }
  return out;
}

std::optional<std::size_t> SecondaryFan::chamber_index(const Triangulation& t) const {
  for (std::size_t i = 0; i < chambers.size(); ++i)
    if (chambers[i].triangulation == t) return i;
  return std::nullopt;
}

std::optional<std::size_t> SecondaryFan::chamber_of(std::span<const Rational> y) const {
  for (std::size_t i = 0; i < chambers.size(); ++i)
    if (chambers[i].cone.contains(y)) return i;
  return std::nullopt;
}

SecondaryFan build_secondary_fan(const PolytopePtr& q, const FanOptions& options) {
  SecondaryFan fan{LatticeLContext(q), {}, {}, {}, {}, {}, {}};
  const auto& ctx = fan.ctx;
  fan.psi = psi_map(ctx);
  const std::size_t r = ctx.rank();

  for (auto& rt : enumerate_regular_triangulations(ctx, options.method)) {
    GkzChamber ch = gkz_cone(ctx, rt.triangulation);
    ch.witness = std::move(rt.witness);
    fan.chambers.push_back(std::move(ch));
  }
  const std::size_t nc = fan.chambers.size();
  fan.adjacency.assign(nc, {});

  fan.checks.dimensions = true;
  for (const auto& ch : fan.chambers) fan.checks.dimensions = fan.checks.dimensions && ch.cone.dim() == r;

  fan.checks.intersections = true;
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = i + 1; j < nc; ++j) {
      auto common = fan.chambers[i].cone.intersect(fan.chambers[j].cone);
      if (!common.is_face_of(fan.chambers[i].cone) || !common.is_face_of(fan.chambers[j].cone))
        fan.checks.intersections = false;
      if (r > 0 && common.dim() + 1 == r) {
        fan.walls.push_back({i, j, common});
        fan.adjacency[i].push_back(j);
        fan.adjacency[j].push_back(i);
      }
    }
  }

  // codimension-2 faces: facets of the walls
  if (r >= 2) {
    for (const auto& w : fan.walls) {
      for (const auto& a : w.cone.facets()) {
        auto f = w.cone.intersect_hyperplane(a);
        if (f.dim() + 2 != r) continue;
        bool dup = false;
        for (const auto& c : fan.codim2) dup = dup || c.cone == f;
        if (dup) continue;
        Codim2Face face{f, {}};
        for (std::size_t i = 0; i < nc; ++i)
          if (f.is_face_of(fan.chambers[i].cone)) face.chambers.push_back(i);
        fan.codim2.push_back(std::move(face));
      }
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  fan.checks.complete = true;
  fan.checks.generic_unique = true;
  for (std::size_t s = 0; s < options.samples; ++s) {
    RatVec y(r);
    for (auto& x : y) x = dist(rng);
    std::size_t hits = 0;
    bool interior = false;
    for (const auto& ch : fan.chambers) {
      if (!ch.cone.contains(std::span<const Rational>(y))) continue;
      ++hits;
      if (ch.cone.in_relative_interior(y)) interior = true;
    }
    if (hits == 0) fan.checks.complete = false;
    if (interior && hits != 1) fan.checks.generic_unique = false;
  }
  fan.checks.samples = options.samples;
  return fan;
}

}  // namespace gkz
