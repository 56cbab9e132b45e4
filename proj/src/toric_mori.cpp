#include "gkz/toric_mori.hpp"

#include <algorithm>

#include "gkz/errors.hpp"
#include "gkz/lattice.hpp"
#include "gkz/linalg.hpp"

namespace gkz {

namespace {

IntMatrix lifted_rows(const LatticePolytope& q, const std::vector<std::size_t>& idx) {
  const std::size_t d = q.dim() + 1;
  IntMatrix m(idx.size(), d);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = q.lifted(idx[r])[c];
  return m;
}

// Index of the lattice spanned by the rows in its saturation.
Integer multiplicity(const LatticePolytope& q, const std::vector<std::size_t>& idx) {
  Integer m = 1;
  for (const auto& f : hermite_smith(lifted_rows(q, idx)).invariant_factors()) m *= f;
  return m;
}

IntMatrix matrix_of(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

std::vector<std::size_t> apex(const Cell& cell, const std::vector<std::size_t>& wall) {
  std::vector<std::size_t> out;
  std::set_difference(cell.vertices.begin(), cell.vertices.end(), wall.begin(), wall.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ToricFanData build_fan_data(const LatticeLContext& ctx, const Paving& p) {
  const auto& q = ctx.polytope();
  const std::size_t d = q.dim() + 1, nc = p.cells().size(), n = q.size();
  ToricFanData fd{ctx, p, {}, {}, {}, 1, {}, {}, IntMatrix(0, nc * d), IntMatrix(0, nc * d), IntMatrix(n, nc * d)};
  for (std::size_t c = 0; c < nc; ++c) fd.cones.push_back(p.cell_cone(c));
  fd.rays = p.used_points();

  std::vector<IntVec> eqs, ineqs;
  for (const auto& w : p.interior_walls()) {
    for (auto v : w.vertices) {
      IntVec row(nc * d);
      for (std::size_t j = 0; j < d; ++j) {
        row[w.plus * d + j] += q.lifted(v)[j];
        row[w.minus * d + j] -= q.lifted(v)[j];
      }
      eqs.push_back(std::move(row));
    }
    std::size_t j = 0;
    while (w.normal[j] == 0) ++j;
    IntVec row(nc * d);
    const long s = w.normal[j] > 0 ? 1 : -1;
    row[w.plus * d + j] = s;
    row[w.minus * d + j] = -s;
    ineqs.push_back(std::move(row));
  }
  fd.continuity = matrix_of(eqs, nc * d);
  fd.convexity = matrix_of(ineqs, nc * d);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    while (!std::binary_search(p.cells()[c].points.begin(), p.cells()[c].points.end(), i)) ++c;
    for (std::size_t j = 0; j < d; ++j) fd.evaluation(i, c * d + j) = q.lifted(i)[j];
  }

  std::vector<IntVec> coeff_basis;
  if (eqs.empty()) {
    for (std::size_t k = 0; k < nc * d; ++k) {
      IntVec e(nc * d);
      e[k] = 1;
      coeff_basis.push_back(std::move(e));
    }
  } else {
    coeff_basis = integer_kernel(fd.continuity);
  }
  std::vector<IntVec> values;
  for (const auto& k : coeff_basis) {
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < nc * d; ++c) v[i] += fd.evaluation(i, c) * k[c];
    values.push_back(std::move(v));
  }
  fd.pa_basis = lattice_basis(values, n);
  fd.pa_index = saturation_index(fd.pa_basis, n);

  std::vector<IntVec> used_cols;
  IntMatrix a(d, fd.rays.size());
  for (std::size_t c = 0; c < fd.rays.size(); ++c)
    for (std::size_t r = 0; r < d; ++r) a(r, c) = q.lifted(fd.rays[c])[r];
  auto hs = hermite_smith(a);
  fd.class_group.rank = fd.rays.size() - hs.rank;
  for (const auto& f : hs.invariant_factors())
    if (f > 1) fd.class_group.torsion.push_back(f);

  // 𝕃_𝒫: dual of the image of PA ⊕ Z^{I_∅} in 𝕃*
  const std::size_t r = ctx.rank();
  std::vector<IntVec> gens;
  for (const auto& f : fd.pa_basis) gens.push_back(as_integers(ctx.to_lstar(to_rational(f))));
  for (auto w : p.empty_points()) {
    RatVec e(n);
    e[w] = 1;
    gens.push_back(as_integers(ctx.to_lstar(e)));
  }
  if (r > 0) {
    auto lam = lattice_basis(gens, r);
    if (lam.size() == r) {
      RatMatrix b(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) b(i, j) = lam[i][j];
      RatMatrix inv = *inverse(b);
      for (std::size_t i = 0; i < r; ++i) {
        RatVec row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = inv(j, i);
        fd.l_p_basis.push_back(std::move(row));
      }
    }
  }
  return fd;
}

RationalCone nef_cone(const ToricFanData& fd) {
  const std::size_t dim = fd.evaluation.cols();
  auto coeff = RationalCone::from_inequalities(dim, fd.convexity.to_rows(), fd.continuity.to_rows());
  const auto& l = fd.ctx.l_basis();
  const std::size_t r = l.size(), n = fd.ctx.n();
  IntMatrix m(r, dim);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t k = 0; k < n; ++k) m(i, c) += l[i][k] * fd.evaluation(k, c);
  auto out = coeff.image(m);
  out.with_lattice_name("L*");
  return out;
}

RationalCone eff_curve_cone(const ToricFanData& fd) {
  auto out = nef_cone(fd).dual();
  out.with_lattice_name("L");
  return out;
}

std::vector<RatVec> eff_curve_generators(const ToricFanData& fd) {
  auto eff = eff_curve_cone(fd);
  std::vector<RatVec> out;
  if (!eff.is_pointed() || fd.l_p_basis.empty()) {
    for (const auto& ray : eff.rays()) out.push_back(to_rational(ray));
    return out;
  }
  Integer den = 1;
  for (const auto& row : fd.l_p_basis)
    for (const auto& x : row) den = lcm(den, x.get_den());
  std::vector<IntVec> scaled;
  for (const auto& row : fd.l_p_basis) scaled.push_back(as_integers(scale(row, Rational(den))));
  for (const auto& h : hilbert_basis(eff, scaled)) out.push_back(scale(to_rational(h), Rational(1, den)));
  return out;
}

CurveClass wall_curve_class(const ToricFanData& fd, const Wall& w) {
  const auto& q = fd.ctx.polytope();
  const auto& plus = fd.paving.cells()[w.plus];
  const auto& minus = fd.paving.cells()[w.minus];
  auto ap = apex(plus, w.vertices);
  auto am = apex(minus, w.vertices);
  if (ap.size() != 1 || am.size() != 1) throw PreconditionError("wall_curve_class: cells are not simplices");
  CurveClass cc;
  cc.wall = w;
  cc.mult_wall = multiplicity(q, w.vertices);
  cc.mult_plus = abs(determinant(lifted_rows(q, plus.vertices)));
  cc.mult_minus = abs(determinant(lifted_rows(q, minus.vertices)));

  std::vector<std::size_t> all = w.vertices;
  all.push_back(ap[0]);
  all.push_back(am[0]);
  RatMatrix cols(q.dim() + 1, all.size());
  for (std::size_t c = 0; c < all.size(); ++c)
    for (std::size_t r = 0; r <= q.dim(); ++r) cols(r, c) = q.lifted(all[c])[r];
  RatVec rel = nullspace(cols).front();
  rel = scale(rel, Rational(cc.mult_wall, cc.mult_plus) / rel[all.size() - 2]);
  cc.b = rel;
  cc.covector.assign(q.size(), Rational(0));
  for (std::size_t i = 0; i < all.size(); ++i) cc.covector[all[i]] += rel[i];
  return cc;
}

bool is_relative_minimal(const ToricFanData& fd) {
  if (!fd.paving.is_triangulation() || !fd.paving.empty_points().empty()) return false;
  return std::holds_alternative<CoherenceWitness>(is_coherent(fd.paving));
}

std::vector<RatVec> p_d_vertices(const LatticePolytope& q, const RatVec& dv, const std::vector<std::size_t>& points) {
  // homogenized: (m, t) with t >= 0 and t D(ω) - <m, (ω,1)> >= 0
  const std::size_t d = q.dim() + 1;
  std::vector<RatVec> ineqs;
  RatVec t(d + 1);
  t[d] = 1;
  ineqs.push_back(t);
  for (auto w : points) {
    RatVec row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = -q.lifted(w)[j];
    row[d] = dv[w];
    ineqs.push_back(std::move(row));
  }
  auto cone = RationalCone::from_inequalities(d + 1, ineqs);
  std::vector<RatVec> out;
  for (const auto& ray : cone.rays()) {
    if (ray[d] == 0) continue;
    RatVec v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = Rational(ray[j], ray[d]);
    for (auto& x : v) x.canonicalize();
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool mori_chamber_check(const LatticeLContext& ctx, const Triangulation& t, const RatVec& dv) {
  const auto& q = ctx.polytope();
  auto sub = regular_subdivision(ctx.polytope_ptr(), dv);
  if (!sub.is_triangulation()) throw NotInterior("mori_chamber_check: D lies on a wall");
  // points off the lower hull must be strictly above it
  auto g = interpolate(sub, dv);
  for (auto w : sub.empty_points())
    if (g.evaluate_point(w)[0] == dv[w]) throw NotInterior("mori_chamber_check: D lies on a wall");

  if (!(sub == t)) return false;
  auto e = interpolate(t, dv);
  for (auto w : t.empty_points())
    if (!(dv[w] - e.evaluate_point(w)[0] > 0)) return false;
  std::vector<std::size_t> all(q.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return p_d_vertices(q, dv, all) == p_d_vertices(q, dv, t.used_points());
}

MovingCone moving_cone(const SecondaryFan& fan) {
  const std::size_t r = fan.ctx.rank();
  MovingCone mc;
  std::vector<IntVec> gens, lines;
  for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
    const auto& ch = fan.chambers[i];
    if (!ch.i_empty.empty()) continue;
    mc.chambers.push_back(i);
    for (const auto& ray : ch.cone.rays()) gens.push_back(ray);
    for (const auto& l : ch.cone.lineality()) lines.push_back(l);
  }
  mc.cone = RationalCone::from_generators(r, gens, lines);
  mc.cone.with_lattice_name("L*");
  mc.convex = true;
  for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
    if (std::find(mc.chambers.begin(), mc.chambers.end(), i) != mc.chambers.end()) continue;
    if (fan.chambers[i].cone.intersect(mc.cone).dim() >= r) mc.convex = false;
  }
  if (!fan.checks.complete) mc.convex = false;
  return mc;
}

}  // namespace gkz
