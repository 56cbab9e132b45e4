#include "gkz/lattice.hpp"

#include <cassert>
#include <optional>

#include "gkz/errors.hpp"
#include "gkz/linalg.hpp"

namespace gkz {

namespace {

// g = x*a + y*b with g >= 0.
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// rows (r, i) <- (x r + y i, -b/g r + a/g i); determinant 1.
void combine_rows(IntMatrix& m, std::size_t r, std::size_t i, const Integer& x, const Integer& y,
                  const Integer& bg, const Integer& ag) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer vr = m(r, j), vi = m(i, j);
    m(r, j) = x * vr + y * vi;
    m(i, j) = ag * vi - bg * vr;
  }
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

std::pair<IntMatrix, IntMatrix> hermite_with_rank(const IntMatrix& m, std::size_t& rank) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      Integer g, x, y;
      ext_gcd(h(r, c), h(i, c), g, x, y);
      Integer ag = h(r, c) / g, bg = h(i, c) / g;
      combine_rows(h, r, i, x, y, bg, ag);
      combine_rows(u, r, i, x, y, bg, ag);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer f = -floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, f);
      add_row_multiple(u, i, r, f);
    }
    ++r;
  }
  rank = r;
  return {std::move(h), std::move(u)};
}

std::pair<IntMatrix, IntMatrix> hermite(const IntMatrix& m) {
  std::size_t r;
  return hermite_with_rank(m, r);
}

HermiteSmith hermite_smith(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw PreconditionError("hermite_smith: empty matrix");
  HermiteSmith out;
  auto [h, u] = hermite_with_rank(m, out.rank);
  out.hermite = std::move(h);
  out.u = std::move(u);

  IntMatrix s = m;
  IntMatrix p = IntMatrix::identity(m.rows());
  IntMatrix q = IntMatrix::identity(m.cols());
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t bi = s.rows(), bj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (bi == s.rows() || abs(s(i, j)) < abs(s(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == s.rows()) break;
      s.swap_rows(t, bi);
      p.swap_rows(t, bi);
      s.swap_cols(t, bj);
      q.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer f = -floor_div(s(i, t), s(t, t));
        add_row_multiple(s, i, t, f);
        add_row_multiple(p, i, t, f);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer f = -floor_div(s(t, j), s(t, t));
        add_col_multiple(s, j, t, f);
        add_col_multiple(q, j, t, f);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into row t and go again
      bool divides = true;
      for (std::size_t i = t + 1; i < s.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            add_row_multiple(s, t, i, 1);
            add_row_multiple(p, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < s.rows() && t < s.cols() && s(t, t) < 0) {
      negate_row(s, t);
      negate_row(p, t);
    }
  }
  out.smith = std::move(s);
  out.p = std::move(p);
  out.q = std::move(q);
  return out;
}

std::vector<Integer> HermiteSmith::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(smith.rows(), smith.cols()); ++i)
    if (smith(i, i) != 0) out.push_back(smith(i, i));
  return out;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
  if (m.cols() == 0) return {};
  if (m.rows() == 0) return IntMatrix::identity(m.cols()).to_rows();
  // u * m^T = h; rows of u past the rank annihilate m.
  std::size_t r;
  auto [h, u] = hermite_with_rank(m.transpose(), r);
  std::vector<IntVec> gens;
  for (std::size_t i = r; i < u.rows(); ++i) gens.push_back(u.row_vec(i));
  return lattice_basis(gens, m.cols());
}

std::vector<IntVec> lattice_basis(const std::vector<IntVec>& gens, std::size_t dim) {
  if (gens.empty()) return {};
  std::size_t r;
  auto [h, u] = hermite_with_rank(IntMatrix::from_rows(gens, dim), r);
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(h.row_vec(i));
  return out;
}

std::vector<IntVec> saturation_basis(const std::vector<IntVec>& gens, std::size_t dim) {
  if (gens.empty()) return {};
  // saturation = kernel of the kernel
  auto perp = integer_kernel(IntMatrix::from_rows(gens, dim));
  if (perp.empty()) return IntMatrix::identity(dim).to_rows();
  return integer_kernel(IntMatrix::from_rows(perp, dim));
}

Integer saturation_index(const std::vector<IntVec>& gens, std::size_t dim) {
  if (gens.empty()) return 1;
  auto hs = hermite_smith(IntMatrix::from_rows(gens, dim));
  Integer idx = 1;
  for (const auto& f : hs.invariant_factors()) idx *= f;
  return idx;
}

Integer torsion_order(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 1;
  auto hs = hermite_smith(m);
  Integer idx = 1;
  for (const auto& f : hs.invariant_factors()) idx *= f;
  return idx;
}

std::optional<RatVec> rational_coordinates(const std::vector<IntVec>& basis, const RatVec& v) {
  if (basis.empty()) {
    if (is_zero(v)) return RatVec{};
    return std::nullopt;
  }
  RatMatrix m(v.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = basis[j][i];
  return solve(m, v);
}

std::optional<IntVec> lattice_coordinates(const std::vector<IntVec>& basis, const IntVec& v) {
  auto z = rational_coordinates(basis, to_rational(v));
  if (!z || !is_integral(*z)) return std::nullopt;
  return as_integers(*z);
}

Integer sublattice_index(const std::vector<IntVec>& big, const std::vector<IntVec>& small) {
  if (big.size() != small.size()) throw PreconditionError("sublattice_index: rank mismatch");
  if (big.empty()) return 1;
  // coordinates of small in terms of big, then |det|
  RatMatrix coords(small.size(), big.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto z = rational_coordinates(big, to_rational(small[i]));
    if (!z) throw PreconditionError("sublattice_index: not in the same span");
    for (std::size_t j = 0; j < big.size(); ++j) coords(i, j) = (*z)[j];
  }
  Rational d = determinant(coords);
  if (d.get_den() != 1) throw PreconditionError("sublattice_index: not a sublattice");
  return abs(d.get_num());
}

}  // namespace gkz
