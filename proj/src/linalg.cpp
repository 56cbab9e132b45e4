#include "gkz/linalg.hpp"

#include <cassert>

namespace gkz {

RowEchelon rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  RatMatrix reduced(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

std::size_t rank(const std::vector<RatVec>& rows, std::size_t cols) {
  return rank(RatMatrix::from_rows(rows, cols));
}

std::vector<RatVec> nullspace(const RatMatrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
  assert(b.size() == m.rows());
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  RatVec x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    x[pivots[i]] = r(i, m.cols());
  }
  return x;
}

Rational determinant(RatMatrix m) {
  assert(m.rows() == m.cols());
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto [r, pivots] = rref(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

std::vector<IntVec> canonical_span_basis(const std::vector<RatVec>& rows, std::size_t cols) {
  if (rows.empty()) return {};
  auto [r, pivots] = rref(RatMatrix::from_rows(rows, cols));
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < r.rows(); ++i) out.push_back(primitive_line(r.row(i)));
  return out;
}

RatVec project_orthogonal(const RatVec& v, const std::vector<RatVec>& basis) {
  if (basis.empty()) return v;
  // v - B^T (B B^T)^{-1} B v
  const std::size_t k = basis.size();
  RatMatrix gram(k, k);
  RatVec bv(k);
  for (std::size_t i = 0; i < k; ++i) {
    bv[i] = dot(basis[i], v);
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(basis[i], basis[j]);
  }
  auto coeffs = solve(gram, bv);
  assert(coeffs);
  RatVec out = v;
  for (std::size_t i = 0; i < k; ++i) {
    if ((*coeffs)[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) out[j] -= (*coeffs)[i] * basis[i][j];
  }
  return out;
}

bool in_span(const RatVec& v, const std::vector<RatVec>& basis) {
  if (basis.empty()) return is_zero(v);
  RatMatrix m(v.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = basis[j][i];
  return solve(m, v).has_value();
}

std::optional<RatVec> affine_coordinates(const std::vector<RatVec>& lifted_basis, const RatVec& lifted_point) {
  const std::size_t k = lifted_basis.size();
  const std::size_t d = lifted_point.size();
  RatMatrix m(d, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d; ++i) m(i, j) = lifted_basis[j][i];
  return solve(m, lifted_point);
}

}  // namespace gkz
