#include "gkz/families.hpp"

#include <algorithm>
#include <numeric>

#include "gkz/errors.hpp"
#include "gkz/lattice.hpp"
#include "gkz/linalg.hpp"
#include "gkz/toric_mori.hpp"
#include "gkz/wall_crossing.hpp"

namespace gkz {

namespace {

IntVec integral_or_throw(const RatVec& v, const char* what) {
  if (!is_integral(v)) throw PreconditionError(what);
  return as_integers(v);
}

// Some integer x with n·x = 1 (n primitive).
IntVec unit_solution(const IntVec& n) {
  IntVec x(n.size());
  Integer g = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    if (g == 0) {
      g = n[i];
      x[i] = 1;
      continue;
    }
    // s g + t n_i = gcd
    mpz_class d, s, t;
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), n[i].get_mpz_t());
    for (auto& c : x) c *= s;
    x[i] = t;
    g = d;
  }
  if (g < 0) x = negate(x);
  return x;
}

}  // namespace

MonoidP MonoidP::naturals(std::size_t k) {
  MonoidP p;
  p.name = k == 1 ? "N" : "N^" + std::to_string(k);
  p.rank = k;
  p.generators = IntMatrix::identity(k).to_rows();
  p.cone = RationalCone::from_generators(k, p.generators);
  p.sharp = true;
  return p;
}

MonoidP MonoidP::from_generators(std::string name, std::size_t k, const std::vector<IntVec>& gens,
                                 const std::vector<IntVec>& lineality) {
  MonoidP p;
  p.name = std::move(name);
  p.rank = k;
  p.cone = RationalCone::from_generators(k, gens, lineality);
  p.sharp = p.cone.is_pointed();
  p.generators = p.sharp ? hilbert_basis(p.cone) : gens;
  return p;
}

bool MonoidP::above(std::span<const Integer> u, std::span<const Integer> v) const {
  return cone.contains(std::span<const Integer>(sub(u, v)));
}

bool MonoidP::is_unit(std::span<const Integer> p) const {
  return cone.contains(p) && cone.contains(std::span<const Integer>(negate(p)));
}

PiecewiseAffineFn fit_piecewise_affine(const Paving& p, const std::vector<RatVec>& values) {
  const auto& q = p.polytope();
  const std::size_t d = q.dim() + 1;
  if (values.size() != q.size()) throw PreconditionError("fit_piecewise_affine: one value per lattice point");
  const std::size_t k = values.empty() ? 1 : values.front().size();
  std::vector<RatMatrix> pieces;
  for (const auto& cell : p.cells()) {
    RatMatrix m(cell.points.size(), d);
    for (std::size_t i = 0; i < cell.points.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = q.lifted(cell.points[i])[j];
    RatMatrix piece(k, d);
    for (std::size_t r = 0; r < k; ++r) {
      RatVec b(cell.points.size());
      for (std::size_t i = 0; i < cell.points.size(); ++i) b[i] = values[cell.points[i]][r];
      auto a = solve(m, b);
      if (!a) throw PreconditionError("fit_piecewise_affine: values are not affine on a cell");
      for (std::size_t j = 0; j < d; ++j) piece(r, j) = (*a)[j];
    }
    pieces.push_back(std::move(piece));
  }
  return PiecewiseAffineFn(p, std::move(pieces));
}

TwistedMonoid::TwistedMonoid(PolytopePtr q, PiecewiseAffineFn phi, MonoidP p, int truncation)
    : q_(std::move(q)), phi_(std::move(phi)), p_(std::move(p)), truncation_(truncation) {
  if (phi_.value_dim() != p_.rank && !(p_.rank == 0 && phi_.value_dim() == 1))
    throw PreconditionError("twisted monoid: φ must take values in P^gp");
  elements_ = s_of_q(*q_, truncation_);
  for (const auto& a : elements_) phi_tilde(a);
}

IntVec TwistedMonoid::phi_tilde(const GradedPoint& a) const {
  if (a.is_vector()) {
    if (!is_zero(a.lifted())) throw PreconditionError("twisted monoid: degree-zero element outside S(Q)");
    return IntVec(p_.rank);
  }
  auto v = phi_.evaluate_lifted(to_rational(a.lifted()));
  if (p_.rank == 0) return {};
  return integral_or_throw(v, "twisted monoid: φ is not integral");
}

IntVec TwistedMonoid::correction(const GradedPoint& a, const GradedPoint& b) const {
  auto s = GradedPoint::from_lifted(gkz::add(a.lifted(), b.lifted()));
  return sub(gkz::add(phi_tilde(a), phi_tilde(b)), phi_tilde(s));
}

TwistedElement TwistedMonoid::add(const TwistedElement& a, const TwistedElement& b) const {
  auto s = GradedPoint::from_lifted(gkz::add(a.alpha.lifted(), b.alpha.lifted()));
  return {s, gkz::add(gkz::add(a.p, b.p), correction(a.alpha, b.alpha))};
}

bool TwistedMonoid::corrections_in_p() const {
  for (const auto& a : elements_)
    for (const auto& b : elements_) {
      if (a.degree() + b.degree() > truncation_) continue;
      if (!p_.contains(correction(a, b))) return false;
    }
  return true;
}

bool TwistedMonoid::is_p_convex() const {
  for (const auto& b : bending_parameters(phi_, &p_.cone))
    if (!b.in_monoid) return false;
  return true;
}

ThetaProduct theta_multiply(const TwistedMonoid& tm, const GradedPoint& a, const GradedPoint& b) {
  if (a.degree() + b.degree() > tm.truncation())
    throw PreconditionError("theta_multiply: degree exceeds the truncation");
  return {GradedPoint::from_lifted(add(a.lifted(), b.lifted())), tm.correction(a, b)};
}

bool PolyhedronQPhi::contains(std::span<const Rational> alpha, std::span<const Rational> h) const {
  for (const auto& row : inequalities) {
    Rational s = row.back();
    for (std::size_t j = 0; j < g; ++j) s += row[j] * alpha[j];
    for (std::size_t j = 0; j < k; ++j) s += row[g + j] * h[j];
    if (s < 0) return false;
  }
  return true;
}

PolyhedronQPhi q_phi(const LatticePolytope& q, const PiecewiseAffineFn& phi, const MonoidP& p) {
  for (const auto& b : bending_parameters(phi, &p.cone))
    if (!b.in_monoid) throw NotConvex("q_phi: φ is not P-convex");
  PolyhedronQPhi out;
  out.g = q.dim();
  out.k = p.rank;
  const std::size_t g = out.g, k = out.k;
  const auto& o = q.origin();
  std::vector<IntVec> rows;
  for (const auto& a : q.cone().facets()) {
    IntVec row(g + k + 1);
    Integer c = a[g];
    for (std::size_t j = 0; j < g; ++j) {
      row[j] = a[j];
      c -= a[j] * o[j];
    }
    row[g + k] = c;
    rows.push_back(primitive(row));
  }
  std::vector<IntVec> us = p.cone.facets();
  for (const auto& e : p.cone.equations()) {
    us.push_back(e);
    us.push_back(negate(e));
  }
  for (const auto& piece : phi.pieces())
    for (const auto& u : us) {
      RatVec row(g + k + 1);
      for (std::size_t r = 0; r < k; ++r) {
        row[g + r] = u[r];
        Rational c = piece(r, g);
        for (std::size_t j = 0; j < g; ++j) {
          row[j] -= u[r] * piece(r, j);
          c -= piece(r, j) * o[j];
        }
        row[g + k] -= u[r] * c;
      }
      if (!is_zero(row)) rows.push_back(primitive(row));
    }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (const auto& r : rows) out.inequalities.push_back(to_rational(r));

  std::vector<IntVec> rays, lines;
  auto embed = [&](const IntVec& v) {
    IntVec w(g + k);
    for (std::size_t j = 0; j < k; ++j) w[g + j] = v[j];
    return w;
  };
  for (const auto& r : p.cone.rays()) rays.push_back(embed(r));
  for (const auto& l : p.cone.lineality()) lines.push_back(embed(l));
  out.recession = RationalCone::from_generators(g + k, rays, lines);
  return out;
}

IntVec HPMonoid::star(const GradedPoint& a, const GradedPoint& b) const {
  IntVec f(pa_basis.size());
  auto s = add(a.lifted(), b.lifted());
  auto eval = [](const PiecewiseAffineFn& fn, const IntVec& x) -> Rational {
    if (x.back() == 0) return 0;
    return fn.evaluate_lifted(to_rational(x))[0];
  };
  for (std::size_t j = 0; j < pa_basis.size(); ++j) {
    Rational v = eval(pa_functions[j], a.lifted()) + eval(pa_functions[j], b.lifted()) - eval(pa_functions[j], s);
    f[j] = as_integer(v);
  }
  if (rank == 0) return {};
  auto c = lattice_coordinates(ann, f);
  if (!c) throw Error("build_hp: α*β outside ann(Aff)");
  return *c;
}

RatVec HPMonoid::pa_class(const RatVec& values) const {
  auto x = rational_coordinates(pa_basis, values);
  if (!x) throw PreconditionError("pa_class: not a piecewise affine function on the paving");
  RatVec y(rank);
  for (std::size_t i = 0; i < rank; ++i) y[i] = dot(ann[i], *x);
  return y;
}

HPMonoid build_hp(const PolytopePtr& q, const Paving& p, int truncation) {
  if (!std::holds_alternative<CoherenceWitness>(is_coherent(p))) throw PreconditionError("build_hp: paving is not coherent");
  LatticeLContext ctx(q);
  auto fd = build_fan_data(ctx, p);
  HPMonoid hp;
  hp.paving = p;
  hp.pa_basis = fd.pa_basis;
  const std::size_t k = hp.pa_basis.size(), d = q->dim() + 1;
  for (const auto& b : hp.pa_basis) {
    std::vector<RatVec> vals;
    for (const auto& x : b) vals.push_back(RatVec{Rational(x)});
    hp.pa_functions.push_back(fit_piecewise_affine(p, vals));
  }
  IntMatrix aff(d, k);
  for (std::size_t j = 0; j < d; ++j) {
    IntVec v(q->size());
    for (std::size_t i = 0; i < q->size(); ++i) v[i] = q->lifted(i)[j];
    auto c = lattice_coordinates(hp.pa_basis, v);
    if (!c) throw Error("build_hp: affine function outside PA(𝒫, Z)");
    for (std::size_t i = 0; i < k; ++i) aff(j, i) = (*c)[i];
  }
  hp.ann = integer_kernel(aff);
  hp.rank = hp.ann.size();
  const std::size_t r = hp.rank;

  auto elems = s_of_q(*q, truncation);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) {
      if (elems[i].is_vector() || elems[j].is_vector()) continue;
      auto s = hp.star(elems[i], elems[j]);
      if (!is_zero(s)) hp.generators.push_back(std::move(s));
    }
  std::sort(hp.generators.begin(), hp.generators.end());
  hp.generators.erase(std::unique(hp.generators.begin(), hp.generators.end()), hp.generators.end());

  // convexity of Σ x_j pa_j: nonnegative bending across every wall
  std::vector<IntVec> rows(p.interior_walls().size(), IntVec(k));
  for (std::size_t j = 0; j < k; ++j) {
    auto bends = bending_parameters(hp.pa_functions[j]);
    for (std::size_t w = 0; w < bends.size(); ++w) rows[w][j] = as_integer(bends[w].p[0]);
  }
  auto x_cone = RationalCone::from_inequalities(k, rows);
  if (r == 0) {
    hp.convex_cone = RationalCone::full_space(0);
    hp.sharp = true;
    hp.hgp_is_ann = true;
    hp.saturation_equal = true;
    return hp;
  }
  hp.convex_cone = x_cone.image(IntMatrix::from_rows(hp.ann, k));
  hp.convex_cone.with_lattice_name("PA/Aff");
  auto dual = hp.convex_cone.dual();
  dual.with_lattice_name("H");
  if (dual.is_pointed()) hp.cpz_dual_hilbert = hilbert_basis(dual);

  auto h_cone = RationalCone::from_generators(r, hp.generators);
  hp.sharp = h_cone.is_pointed();
  hp.hgp_is_ann = lattice_basis(hp.generators, r).size() == r && saturation_index(hp.generators, r) == 1;
  if (hp.sharp) hp.hsat_hilbert = hilbert_basis(h_cone);
  hp.saturation_equal = hp.sharp && dual.is_pointed() && hp.hsat_hilbert == hp.cpz_dual_hilbert;
  return hp;
}

PiecewiseAffineFn universal_phi(const HPMonoid& hp) {
  const auto& q = hp.paving.polytope();
  const std::size_t k = hp.pa_basis.size(), d = q.dim() + 1, r = hp.rank;
  const std::size_t nc = hp.paving.cells().size();
  std::vector<RatMatrix> pieces;
  if (r == 0) {
    for (std::size_t c = 0; c < nc; ++c) pieces.emplace_back(1, d);
    return PiecewiseAffineFn(hp.paving, std::move(pieces));
  }
  // G = (A A^T)^{-1} A recovers c from f = A^T c
  RatMatrix a = to_rational(IntMatrix::from_rows(hp.ann, k));
  RatMatrix aat(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t l = 0; l < k; ++l) aat(i, j) += a(i, l) * a(j, l);
  RatMatrix inv = *inverse(aat);
  RatMatrix gmat(r, k);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < r; ++j) gmat(i, l) += inv(i, j) * a(j, l);
  for (std::size_t c = 0; c < nc; ++c) {
    RatMatrix piece(r, d);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t col = 0; col < d; ++col)
        for (std::size_t l = 0; l < k; ++l) {
          const auto& f = hp.pa_functions[l].pieces();
          piece(i, col) += gmat(i, l) * (f[c](0, col) - f[0](0, col));
        }
    pieces.push_back(std::move(piece));
  }
  return PiecewiseAffineFn(hp.paving, std::move(pieces));
}

MonoidP hp_monoid(const HPMonoid& hp) {
  if (hp.rank == 0) {
    MonoidP p;
    p.name = "H_sat";
    p.cone = RationalCone::origin(0);
    return p;
  }
  return MonoidP::from_generators("H_sat", hp.rank, hp.generators);
}

std::vector<IntVec> universal_bending(const HPMonoid& hp) {
  const auto& q = hp.paving.polytope();
  std::vector<IntVec> out;
  for (const auto& w : hp.paving.interior_walls()) {
    // ω̂ with n(ω̂) = 1 and degree one: fix the degree along a wall vertex
    IntVec x = unit_solution(w.normal);
    const IntVec& v = q.lifted(w.vertices.front());
    Integer shift = 1 - x.back();
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += shift * v[j];
    RatVec xr = to_rational(x);
    IntVec f(hp.pa_basis.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      const auto& pieces = hp.pa_functions[j].pieces();
      f[j] = as_integer(dot(pieces[w.plus].row(0), xr) - dot(pieces[w.minus].row(0), xr));
    }
    if (hp.rank == 0) {
      out.emplace_back();
      continue;
    }
    auto c = lattice_coordinates(hp.ann, f);
    if (!c) throw Error("universal_bending: bending outside ann(Aff)");
    out.push_back(*c);
  }
  return out;
}

ThetaSection theta_section(const LatticeLContext& ctx, const Triangulation& t, const PsiMap& psi) {
  auto g = g_psi(t, psi);
  ThetaSection ts;
  ts.used = t.used_points();
  auto fd = build_fan_data(ctx, t);
  auto dual = gkz_cone(ctx, t).cone.dual();
  ts.flags_match_used = ts.in_l_t = ts.above = ts.stable = true;
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    auto e = sub(to_rational(psi.values[i]), g.evaluate_point(i));
    for (auto& x : e) x.canonicalize();
    auto el = ctx.l_coordinates(e);
    bool unit = is_zero(e);
    bool used = std::binary_search(ts.used.begin(), ts.used.end(), i);
    if (unit != used) ts.flags_match_used = false;
    if (used && !unit) ts.stable = false;
    auto c = coordinates_in(fd.l_p_basis, el);
    if (!c || !is_integral(*c)) ts.in_l_t = false;
    if (!dual.contains(el)) ts.above = false;
    ts.exponents.push_back(std::move(e));
    ts.exponents_l.push_back(std::move(el));
    ts.unit.push_back(unit);
  }
  return ts;
}

Specialization specialize(const TwistedMonoid& tm, const IntVec& v) {
  const auto& p = tm.monoid();
  if (v.size() != p.rank) throw PreconditionError("specialize: functional has the wrong length");
  for (const auto& gen : p.generators)
    if (dot(v, gen) < 0) throw PreconditionError("specialize: functional is negative on P");
  for (const auto& l : p.cone.lineality())
    if (dot(v, l) != 0) throw PreconditionError("specialize: functional is negative on P");

  const auto& phi = tm.phi();
  const auto& paving = phi.paving();
  const auto& q = tm.polytope();
  Specialization out{tm, paving, {}};
  std::vector<std::size_t> parent(paving.cells().size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  RatVec vr = to_rational(v);
  for (const auto& b : bending_parameters(phi)) {
    Rational s = p.rank == 0 ? Rational(0) : dot(vr, b.p);
    out.bending.push_back(as_integer(s));
    if (s == 0) parent[find(b.wall.plus)] = find(b.wall.minus);
  }
  std::vector<std::vector<std::size_t>> groups(paving.cells().size());
  for (std::size_t c = 0; c < paving.cells().size(); ++c) {
    const auto& pts = paving.cells()[c].points;
    groups[find(c)].insert(groups[find(c)].end(), pts.begin(), pts.end());
  }
  std::vector<std::vector<std::size_t>> cells;
  for (auto& gpts : groups) {
    if (gpts.empty()) continue;
    std::sort(gpts.begin(), gpts.end());
    gpts.erase(std::unique(gpts.begin(), gpts.end()), gpts.end());
    cells.push_back(extreme_points(q.lifted_points(), gpts));
  }
  out.central_fiber = Paving::from_cells(tm.polytope_ptr(), cells);
  std::vector<RatVec> vals;
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto val = phi.evaluate_point(i);
    vals.push_back(RatVec{p.rank == 0 ? Rational(0) : dot(vr, val)});
  }
  out.family = TwistedMonoid(tm.polytope_ptr(), fit_piecewise_affine(out.central_fiber, vals), MonoidP::naturals(1),
                             tm.truncation());
  return out;
}

TwistedElement shift(const TwistedElement& e, const LatticePolytope& q, const RatMatrix& psi) {
  if (psi.cols() != q.dim() + 1) throw PreconditionError("shift: affine function has the wrong shape");
  RatVec x = to_rational(e.alpha.lifted());
  RatVec s(psi.rows());
  for (std::size_t r = 0; r < psi.rows(); ++r) s[r] = dot(psi.row(r), x);
  return {e.alpha, add(e.p, integral_or_throw(s, "shift: ψ is not integral"))};
}

}  // namespace gkz
