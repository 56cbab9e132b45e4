#include "gkz/cone.hpp"

#include <algorithm>

#include "detail/dd.hpp"
#include "gkz/errors.hpp"
#include "gkz/lattice.hpp"
#include "gkz/linalg.hpp"

namespace gkz {

namespace {

std::vector<RatVec> to_rational_rows(const std::vector<IntVec>& rows) {
  std::vector<RatVec> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_rational(r));
  return out;
}

std::vector<IntVec> primitive_rows(const std::vector<RatVec>& rows) {
  std::vector<IntVec> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(primitive(r));
  return out;
}

// Project onto the orthogonal complement of span(basis), make primitive, drop
// zeros and duplicates, sort.
std::vector<IntVec> normalize_modulo(const std::vector<IntVec>& vecs, const std::vector<IntVec>& basis) {
  auto rb = to_rational_rows(basis);
  std::vector<IntVec> out;
  for (const auto& v : vecs) {
    IntVec p = basis.empty() ? primitive(v) : primitive(project_orthogonal(to_rational(v), rb));
    if (!is_zero(p)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IntVec> span_basis(const std::vector<IntVec>& vecs, std::size_t dim) {
  return canonical_span_basis(to_rational_rows(vecs), dim);
}

IntVec mat_vec(const IntMatrix& m, const IntVec& v) {
  IntVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

IntVec vec_mat(const IntVec& a, const IntMatrix& m) {
  IntVec out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[j] += a[i] * m(i, j);
  return out;
}

}  // namespace

void RationalCone::canonicalize_rays(std::vector<IntVec> rays, std::vector<IntVec> lines) {
  lineality_ = span_basis(lines, dim_);
  rays_ = normalize_modulo(rays, lineality_);
}

void RationalCone::canonicalize_facets(std::vector<IntVec> facets, std::vector<IntVec> equations) {
  equations_ = span_basis(equations, dim_);
  facets_ = normalize_modulo(facets, equations_);
}

RationalCone RationalCone::from_generators(std::size_t dim, const std::vector<IntVec>& rays,
                                           const std::vector<IntVec>& lineality) {
  RationalCone c;
  c.dim_ = dim;
  auto h = detail::double_description(dim, rays, lineality);
  c.canonicalize_facets(std::move(h.rays), std::move(h.lines));
  auto v = detail::double_description(dim, c.facets_, c.equations_);
  c.canonicalize_rays(std::move(v.rays), std::move(v.lines));
  for (const auto& r : rays)
    if (!c.contains(std::span<const Integer>(r))) throw Error("cone construction: generator outside H-representation");
  return c;
}

RationalCone RationalCone::from_generators(std::size_t dim, const std::vector<RatVec>& rays,
                                           const std::vector<RatVec>& lineality) {
  return from_generators(dim, primitive_rows(rays), primitive_rows(lineality));
}

RationalCone RationalCone::from_inequalities(std::size_t dim, const std::vector<IntVec>& inequalities,
                                             const std::vector<IntVec>& equations) {
  RationalCone c;
  c.dim_ = dim;
  auto v = detail::double_description(dim, inequalities, equations);
  c.canonicalize_rays(std::move(v.rays), std::move(v.lines));
  auto h = detail::double_description(dim, c.rays_, c.lineality_);
  c.canonicalize_facets(std::move(h.rays), std::move(h.lines));
  for (const auto& r : c.rays_) {
    for (const auto& a : inequalities)
      if (dot(a, r) < 0) throw Error("cone construction: ray violates an inequality");
    for (const auto& e : equations)
      if (dot(e, r) != 0) throw Error("cone construction: ray violates an equation");
  }
  return c;
}

RationalCone RationalCone::from_inequalities(std::size_t dim, const std::vector<RatVec>& inequalities,
                                             const std::vector<RatVec>& equations) {
  return from_inequalities(dim, primitive_rows(inequalities), primitive_rows(equations));
}

RationalCone RationalCone::full_space(std::size_t dim) { return from_inequalities(dim, std::vector<IntVec>{}); }

RationalCone RationalCone::origin(std::size_t dim) { return from_generators(dim, std::vector<IntVec>{}); }

bool RationalCone::contains(std::span<const Rational> x) const {
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& a : facets_)
    if (dot(a, x) < 0) return false;
  return true;
}

bool RationalCone::contains(std::span<const Integer> x) const {
  for (const auto& e : equations_)
    if (dot(std::span<const Integer>(e), x) != 0) return false;
  for (const auto& a : facets_)
    if (dot(std::span<const Integer>(a), x) < 0) return false;
  return true;
}

bool RationalCone::contains(const RationalCone& other) const {
  for (const auto& r : other.rays_)
    if (!contains(std::span<const Integer>(r))) return false;
  for (const auto& l : other.lineality_) {
    if (!contains(std::span<const Integer>(l))) return false;
    IntVec m = negate(l);
    if (!contains(std::span<const Integer>(m))) return false;
  }
  return true;
}

bool RationalCone::in_relative_interior(std::span<const Rational> x) const {
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& a : facets_)
    if (dot(a, x) <= 0) return false;
  return true;
}

IntVec RationalCone::relative_interior_point() const {
  IntVec p(dim_);
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < dim_; ++i) p[i] += r[i];
  return p;
}

RationalCone RationalCone::face_containing(std::span<const Rational> x) const {
  std::vector<IntVec> eqs = equations_;
  for (const auto& a : facets_)
    if (dot(a, x) == 0) eqs.push_back(a);
  return from_inequalities(dim_, facets_, eqs);
}

bool RationalCone::is_face_of(const RationalCone& big) const {
  if (big.dim_ != dim_ || !big.contains(*this)) return false;
  IntVec p = relative_interior_point();
  return big.face_containing(to_rational(p)) == *this;
}

RationalCone RationalCone::intersect(const RationalCone& other) const {
  std::vector<IntVec> ineqs = facets_, eqs = equations_;
  ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  return from_inequalities(dim_, ineqs, eqs);
}

RationalCone RationalCone::intersect_hyperplane(const IntVec& normal) const {
  std::vector<IntVec> eqs = equations_;
  eqs.push_back(normal);
  return from_inequalities(dim_, facets_, eqs);
}

RationalCone RationalCone::minkowski_sum(const RationalCone& other) const {
  std::vector<IntVec> rays = rays_, lines = lineality_;
  rays.insert(rays.end(), other.rays_.begin(), other.rays_.end());
  lines.insert(lines.end(), other.lineality_.begin(), other.lineality_.end());
  return from_generators(dim_, rays, lines);
}

RationalCone RationalCone::dual() const {
  RationalCone d;
  d.dim_ = dim_;
  d.rays_ = facets_;
  d.lineality_ = equations_;
  d.facets_ = rays_;
  d.equations_ = lineality_;
  d.lattice_ = lattice_.empty() ? std::string() : lattice_ + "^dual";
  return d;
}

RationalCone RationalCone::image(const IntMatrix& m) const {
  std::vector<IntVec> rays, lines;
  for (const auto& r : rays_) rays.push_back(mat_vec(m, r));
  for (const auto& l : lineality_) lines.push_back(mat_vec(m, l));
  return from_generators(m.rows(), rays, lines);
}

RationalCone RationalCone::preimage(const IntMatrix& m) const {
  std::vector<IntVec> ineqs, eqs;
  for (const auto& a : facets_) ineqs.push_back(vec_mat(a, m));
  for (const auto& e : equations_) eqs.push_back(vec_mat(e, m));
  return from_inequalities(m.cols(), ineqs, eqs);
}

bool operator==(const RationalCone& a, const RationalCone& b) {
  return a.dim_ == b.dim_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_ && a.equations_ == b.equations_ &&
         a.facets_ == b.facets_;
}

RationalCone dual_cone(const RationalCone& c) { return c.dual(); }

std::vector<IntVec> hilbert_basis(const RationalCone& c, const std::vector<IntVec>& lattice_gens) {
  if (!c.is_pointed()) throw PreconditionError("hilbert_basis: cone has nontrivial lineality");
  const std::size_t d = c.ambient_dim();
  if (c.dim() == 0) return {};

  // Basis of lattice ∩ span(C).
  std::vector<IntVec> sublat;
  if (lattice_gens.empty()) {
    sublat = c.equations().empty() ? IntMatrix::identity(d).to_rows()
                                : integer_kernel(IntMatrix::from_rows(c.equations(), d));
  } else {
    auto base = lattice_basis(lattice_gens, d);
    if (c.equations().empty()) {
      sublat = base;
    } else {
      IntMatrix eb(c.equations().size(), base.size());
      for (std::size_t i = 0; i < c.equations().size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j) eb(i, j) = dot(c.equations()[i], base[j]);
      for (const auto& z : integer_kernel(eb)) {
        IntVec v(d);
        for (std::size_t j = 0; j < base.size(); ++j)
          for (std::size_t t = 0; t < d; ++t) v[t] += z[j] * base[j][t];
        sublat.push_back(std::move(v));
      }
    }
  }
  const std::size_t k = sublat.size();
  if (k != c.dim()) throw Error("hilbert_basis: lattice does not span the cone");

  // Work in coordinates z of the sublattice.
  std::vector<IntVec> rays;
  for (const auto& r : c.rays()) {
    auto z = rational_coordinates(sublat, to_rational(r));
    if (!z) throw Error("hilbert_basis: ray outside lattice span");
    rays.push_back(primitive(*z));
  }
  std::vector<IntVec> facets;
  for (const auto& a : c.facets()) {
    IntVec f(k);
    for (std::size_t j = 0; j < k; ++j) f[j] = dot(a, sublat[j]);
    facets.push_back(primitive(f));
  }
  IntVec grading(k);
  for (const auto& f : facets)
    for (std::size_t j = 0; j < k; ++j) grading[j] += f[j];
  if (facets.empty()) throw Error("hilbert_basis: pointed cone without facets");

  std::vector<Integer> ray_deg;
  for (const auto& r : rays) ray_deg.push_back(dot(grading, r));
  std::vector<Integer> sorted_deg = ray_deg;
  std::sort(sorted_deg.rbegin(), sorted_deg.rend());
  Integer cap = 0;
  for (std::size_t i = 0; i < std::min(k, sorted_deg.size()); ++i) cap += sorted_deg[i];

  // Bounding box of the truncated cone {z in C : grading.z <= cap}.
  std::vector<Integer> lo(k, 0), hi(k, 0);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational x = Rational(rays[i][j] * cap, ray_deg[i]);
      Integer fl, ce;
      mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      mpz_cdiv_q(ce.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      if (fl < lo[j]) lo[j] = fl;
      if (ce > hi[j]) hi[j] = ce;
    }
  }

  std::vector<std::pair<Integer, IntVec>> candidates;
  IntVec z = lo;
  while (true) {
    Integer g = dot(grading, z);
    if (g > 0 && g <= cap) {
      bool inside = true;
      for (const auto& f : facets)
        if (dot(f, z) < 0) {
          inside = false;
          break;
        }
      if (inside) candidates.emplace_back(g, z);
    }
    std::size_t j = 0;
    while (j < k) {
      if (z[j] < hi[j]) {
        ++z[j];
        break;
      }
      z[j] = lo[j];
      ++j;
    }
    if (j == k) break;
  }
  std::sort(candidates.begin(), candidates.end());

  // x is reducible iff x - h stays in C for an earlier basis element h.
  std::vector<std::pair<Integer, IntVec>> basis;
  for (const auto& [g, x] : candidates) {
    bool reducible = false;
    for (const auto& [hg, h] : basis) {
      if (hg >= g) break;
      IntVec diff = sub(x, h);
      bool inside = true;
      for (const auto& f : facets)
        if (dot(f, diff) < 0) {
          inside = false;
          break;
        }
      if (inside) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.emplace_back(g, x);
  }

  std::vector<IntVec> out;
  for (const auto& [g, zz] : basis) {
    IntVec v(d);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < d; ++t) v[t] += zz[j] * sublat[j][t];
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gkz
