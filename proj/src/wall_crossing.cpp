#include "gkz/wall_crossing.hpp"

#include <algorithm>

#include "gkz/errors.hpp"
#include "gkz/graded.hpp"
#include "gkz/lattice.hpp"
#include "gkz/linalg.hpp"
#include "gkz/toric_mori.hpp"

namespace gkz {

namespace {

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contained_in_cell(const Paving& p, const std::vector<std::size_t>& s) {
  for (const auto& c : p.cells())
    if (is_subset(s, c.vertices)) return true;
  return false;
}

// Lattice spanned by rational rows, returned as a rational basis.
std::vector<RatVec> rational_lattice_sum(const std::vector<RatVec>& gens, std::size_t dim) {
  Integer den = 1;
  for (const auto& v : gens)
    for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<IntVec> scaled;
  for (const auto& v : gens) scaled.push_back(as_integers(scale(v, Rational(den))));
  std::vector<RatVec> out;
  for (const auto& b : lattice_basis(scaled, dim)) out.push_back(scale(to_rational(b), Rational(1, den)));
  return out;
}

Rational abs_det(const std::vector<RatVec>& rows) {
  RatMatrix m = RatMatrix::from_rows(rows);
  Rational d = determinant(m);
  return d < 0 ? Rational(-d) : d;
}

Integer simplex_mult(const LatticePolytope& q, const std::vector<std::size_t>& idx) {
  Integer m = 1;
  IntMatrix rows(idx.size(), q.dim() + 1);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c <= q.dim(); ++c) rows(r, c) = q.lifted(idx[r])[c];
  for (const auto& f : hermite_smith(rows).invariant_factors()) m *= f;
  return m;
}

std::optional<Rational> ratio_of(const RatVec& v, const RatVec& w) {
  // v = s w
  std::optional<Rational> s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] == 0) {
      if (v[i] != 0) return std::nullopt;
      continue;
    }
    Rational t = v[i] / w[i];
    if (s && *s != t) return std::nullopt;
    s = t;
  }
  return s;
}

void set_flip_data(const LatticeLContext& ctx, WallCrossing& wc) {
  const auto& q = ctx.polytope();
  auto fd = build_fan_data(ctx, wc.t1);
  for (const auto& w : wc.t1.interior_walls()) {
    std::vector<std::size_t> ap, am;
    const auto& pv = wc.t1.cells()[w.plus].vertices;
    const auto& mv = wc.t1.cells()[w.minus].vertices;
    std::set_difference(pv.begin(), pv.end(), w.vertices.begin(), w.vertices.end(), std::back_inserter(ap));
    std::set_difference(mv.begin(), mv.end(), w.vertices.begin(), w.vertices.end(), std::back_inserter(am));
    if (ap.size() != 1 || am.size() != 1) continue;
    if (!std::binary_search(wc.j_plus.begin(), wc.j_plus.end(), ap[0]) ||
        !std::binary_search(wc.j_plus.begin(), wc.j_plus.end(), am[0]))
      continue;
    auto cc = wall_curve_class(fd, w);
    auto m = ratio_of(wc.q_tau, cc.covector);
    if (!m) continue;
    wc.flip_wall = w;
    wc.multiplier = *m;
    // k = apex of the plus cell, σ_k = σ_{J \ {k}} = the minus cell
    auto kpos = std::find(wc.circuit.begin(), wc.circuit.end(), ap[0]) - wc.circuit.begin();
    wc.k = ap[0];
    wc.l = am[0];
    wc.mult_sigma_k = cc.mult_minus;
    wc.mult_sigma_l = cc.mult_plus;
    wc.mult_wall = simplex_mult(q, w.vertices);
    wc.multiplier_formula = Rational(wc.mult_sigma_k) * (-wc.b[kpos]) / Rational(wc.mult_wall);
    wc.multiplier_formula.canonicalize();
    return;
  }
}

}  // namespace

RatVec DifferenceFunction::evaluate(std::span<const Rational> x) const {
  return sub(first_.evaluate(x), second_.evaluate(x));
}

RatVec DifferenceFunction::evaluate_point(std::size_t i) const {
  return sub(first_.evaluate_point(i), second_.evaluate_point(i));
}

PiecewiseAffineFn g_psi(const Triangulation& t, const PsiMap& psi) {
  std::vector<RatVec> values;
  for (const auto& v : psi.values) values.push_back(to_rational(v));
  return interpolate(t, values);
}

DifferenceFunction g12(const Triangulation& t1, const Triangulation& t2, const PsiMap& psi) {
  return {g_psi(t1, psi), g_psi(t2, psi)};
}

WallCrossing classify_wall(const LatticeLContext& ctx, const Triangulation& t1, const Triangulation& t2) {
  return classify_wall(ctx, t1, t2, psi_map(ctx));
}

WallCrossing classify_wall(const LatticeLContext& ctx, const Triangulation& t1, const Triangulation& t2,
                           const PsiMap& psi) {
  const auto& q = ctx.polytope();
  const std::size_t r = ctx.rank();
  auto c1 = gkz_cone(ctx, t1);
  auto c2 = gkz_cone(ctx, t2);
  if (t1 == t2) throw NotAdjacent("classify_wall: identical triangulations");
  auto common = c1.cone.intersect(c2.cone);
  if (common.dim() + 1 != r || !common.is_face_of(c1.cone) || !common.is_face_of(c2.cone))
    throw NotAdjacent("classify_wall: chambers do not share a facet");

  WallCrossing wc;
  wc.t1 = t1;
  wc.t2 = t2;
  wc.wall_paving = regular_subdivision(ctx.polytope_ptr(), ctx.from_lstar(to_rational(common.relative_interior_point())));
  auto diff = g12(t1, t2, psi);

  auto u1 = t1.used_points(), u2 = t2.used_points();
  if (u1 != u2) {
    std::vector<std::size_t> sd;
    std::set_symmetric_difference(u1.begin(), u1.end(), u2.begin(), u2.end(), std::back_inserter(sd));
    if (sd.size() != 1) throw Error("classify_wall: adjacent chambers differ in more than one used point");
    wc.kind = WallKind::Divisorial;
    wc.omega = sd[0];
    wc.first_is_fine = std::binary_search(u1.begin(), u1.end(), wc.omega);
    const auto& fine = wc.first_is_fine ? t1 : t2;
    const auto& coarse = wc.first_is_fine ? t2 : t1;
    wc.star_verified = star_subdivision(coarse, wc.omega) == fine;
    RatVec x = to_rational(q.point(wc.omega));
    const auto& cell = coarse.cells()[*coarse.cell_containing(x)];
    std::vector<RatVec> lv;
    for (auto v : cell.vertices) lv.push_back(to_rational(q.lifted(v)));
    auto bary = *affine_coordinates(lv, to_rational(q.lifted(wc.omega)));
    for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
      if (bary[i] == 0) continue;
      wc.sigma0.push_back(cell.vertices[i]);
      wc.a.push_back(bary[i]);
    }
    wc.omega_point = x;
    wc.q_tau = diff.evaluate_point(wc.omega);
  } else {
    wc.kind = WallKind::Flipping;
    std::vector<std::size_t> u;
    for (const auto& c : t1.cells())
      if (std::find(t2.cells().begin(), t2.cells().end(), c) == t2.cells().end())
        u.insert(u.end(), c.vertices.begin(), c.vertices.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    RatMatrix m(q.dim() + 1, u.size());
    for (std::size_t c = 0; c < u.size(); ++c)
      for (std::size_t row = 0; row <= q.dim(); ++row) m(row, c) = q.lifted(u[c])[row];
    auto ker = nullspace(m);
    if (ker.size() != 1) throw Error("classify_wall: flip region does not carry a single circuit");
    std::vector<std::size_t> pos, neg;
    RatVec rel;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (ker[0][i] == 0) continue;
      wc.circuit.push_back(u[i]);
      rel.push_back(ker[0][i]);
      (ker[0][i] > 0 ? pos : neg).push_back(u[i]);
    }
    if (contained_in_cell(t1, neg)) {
      wc.j_minus = neg;
      wc.j_plus = pos;
    } else {
      wc.j_minus = pos;
      wc.j_plus = neg;
    }
    Rational s = 0;
    for (std::size_t i = 0; i < wc.circuit.size(); ++i)
      if (std::binary_search(wc.j_plus.begin(), wc.j_plus.end(), wc.circuit[i])) s += rel[i];
    wc.b = scale(rel, Rational(1) / s);
    wc.omega_point.assign(q.dim(), Rational(0));
    for (std::size_t i = 0; i < wc.circuit.size(); ++i) {
      if (wc.b[i] <= 0) continue;
      for (std::size_t j = 0; j < q.dim(); ++j) wc.omega_point[j] += wc.b[i] * q.point(wc.circuit[i])[j];
    }
    wc.q_tau = diff.evaluate(wc.omega_point);
  }
  for (auto& x : wc.q_tau) x.canonicalize();
  wc.q_tau_l = ctx.l_coordinates(wc.q_tau);
  if (wc.kind == WallKind::Flipping) set_flip_data(ctx, wc);

  auto d1 = c1.cone.dual(), d2 = c2.cone.dual();
  auto neg_l = negate(wc.q_tau_l);
  if (d1.contains(wc.q_tau_l) && d2.contains(neg_l))
    wc.sign = 1;
  else if (d1.contains(neg_l) && d2.contains(wc.q_tau_l))
    wc.sign = -1;
  auto s = d1.minkowski_sum(d2);
  wc.lineality_ok = s.lineality_dim() == 1 && !is_zero(wc.q_tau_l) &&
                    ratio_of(wc.q_tau_l, to_rational(s.lineality()[0])).has_value();

  auto tc = tau_context(ctx, t1, t2);
  if (auto coords = coordinates_in(tc.l_tau, wc.q_tau_l)) {
    wc.q_tau_primitive = primitive(*coords);
    for (std::size_t i = 0; i < coords->size(); ++i)
      if (wc.q_tau_primitive[i] != 0) {
        wc.q_tau_scale = (*coords)[i] / Rational(wc.q_tau_primitive[i]);
        break;
      }
  }
  return wc;
}

std::vector<RatVec> half_points(const LatticePolytope& q) {
  auto amb = AmbientLattice::of(q);
  std::vector<RatVec> out;
  for (const auto& p : s_of_q(q, 2))
    if (p.degree() == 2) out.push_back(p.point(amb));
  return out;
}

bool cocycle_check(const Triangulation& t1, const Triangulation& t2, const Triangulation& t3, const PsiMap& psi,
                   const std::vector<RatVec>& samples) {
  auto pts = samples.empty() ? half_points(t1.polytope()) : samples;
  auto f12 = g12(t1, t2, psi), f23 = g12(t2, t3, psi), f13 = g12(t1, t3, psi);
  for (const auto& x : pts)
    if (f13.evaluate(x) != add(f12.evaluate(x), f23.evaluate(x))) return false;
  return true;
}

std::optional<RatVec> coordinates_in(const std::vector<RatVec>& basis, const RatVec& v) {
  if (basis.empty()) return is_zero(v) ? std::optional<RatVec>(RatVec{}) : std::nullopt;
  RatMatrix m(v.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = basis[c][r];
  return solve(m, v);
}

TauContext tau_context(const LatticeLContext& ctx, const Triangulation& t1, const Triangulation& t2) {
  const std::size_t r = ctx.rank();
  auto f1 = build_fan_data(ctx, t1), f2 = build_fan_data(ctx, t2);
  if (f1.l_p_basis.size() != r || f2.l_p_basis.size() != r)
    throw PreconditionError("tau_context: lattices of the chambers are not of full rank");
  TauContext tc;
  auto gens = f1.l_p_basis;
  gens.insert(gens.end(), f2.l_p_basis.begin(), f2.l_p_basis.end());
  tc.l_tau = rational_lattice_sum(gens, r);
  Rational dt = abs_det(tc.l_tau);
  tc.index1 = as_integer(abs_det(f1.l_p_basis) / dt);
  tc.index2 = as_integer(abs_det(f2.l_p_basis) / dt);
  tc.s_tau = gkz_cone(ctx, t1).cone.dual().minkowski_sum(gkz_cone(ctx, t2).cone.dual());
  tc.s_tau.with_lattice_name("L_tau");

  std::vector<IntVec> lines;
  for (const auto& l : tc.s_tau.lineality()) lines.push_back(primitive(*coordinates_in(tc.l_tau, to_rational(l))));
  if (!lines.empty()) {
    for (const auto& c : saturation_basis(lines, r)) {
      RatVec v(r);
      for (std::size_t j = 0; j < r; ++j) v = add(v, scale(tc.l_tau[j], Rational(c[j])));
      tc.units.push_back(std::move(v));
    }
  }
  return tc;
}

}  // namespace gkz
