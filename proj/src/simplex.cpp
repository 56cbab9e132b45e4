#include "detail/simplex.hpp"

#include <cassert>
#include <optional>

namespace gkz::detail {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, RatVec(cols + 1)), obj_(cols + 1), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i].back(); }
  Rational& obj(std::size_t j) { return obj_[j]; }
  Rational& obj_value() { return obj_.back(); }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return obj_.size() - 1; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r])
      if (x != 0) x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j < t_[i].size(); ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    if (obj_[c] != 0) {
      Rational f = obj_[c];
      for (std::size_t j = 0; j < obj_.size(); ++j)
        if (t_[r][j] != 0) obj_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Maximize with reduced costs in obj_ (enter while some obj_[j] > 0).
  // Columns >= limit are never entered. Returns false when unbounded.
  bool optimize(std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j)
        if (obj_[j] > 0) {
          enter = j;
          break;
        }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][*enter] <= 0) continue;
        Rational ratio = t_[i].back() / t_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<RatVec> t_;
  RatVec obj_;  // reduced costs, last entry = -(objective value)
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  std::vector<RatVec> rows = lp.rows;
  std::vector<Sense> sense = lp.sense;
  RatVec rhs = lp.rhs;
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      for (auto& x : rows[i]) x = -x;
      rhs[i] = -rhs[i];
      if (sense[i] == Sense::Le) sense[i] = Sense::Ge;
      else if (sense[i] == Sense::Ge) sense[i] = Sense::Le;
    }
  }
  std::size_t num_slack = 0, num_art = 0;
  for (auto s : sense) {
    if (s != Sense::Eq) ++num_slack;
    if (s != Sense::Le) ++num_art;
  }
  const std::size_t art0 = n + num_slack;
  const std::size_t cols = art0 + num_art;
  Tableau tab(m, cols);
  std::size_t slack = n, art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = rows[i][j];
    tab.rhs(i) = rhs[i];
    if (sense[i] == Sense::Le) {
      tab.at(i, slack) = 1;
      tab.basis()[i] = slack++;
    } else {
      if (sense[i] == Sense::Ge) tab.at(i, slack++) = -1;
      tab.at(i, art) = 1;
      tab.basis()[i] = art++;
    }
  }

  // Phase 1: maximize -sum(artificials).
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < art0) continue;
    for (std::size_t j = 0; j < art0; ++j) tab.obj(j) += tab.at(i, j);
    tab.obj_value() += tab.rhs(i);
  }
  tab.optimize(art0);
  LpSolution sol;
  if (tab.obj_value() != 0) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis, dropping redundant rows.
  for (std::size_t i = tab.rows(); i-- > 0;) {
    if (tab.basis()[i] < art0) continue;
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < art0; ++j)
      if (tab.at(i, j) != 0) {
        col = j;
        break;
      }
    if (col) tab.pivot(i, *col);
    else tab.drop_row(i);
  }

  // Phase 2.
  for (std::size_t j = 0; j <= cols; ++j) tab.obj(j) = 0;
  for (std::size_t j = 0; j < n; ++j) tab.obj(j) = lp.objective[j];
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    std::size_t b = tab.basis()[i];
    if (b >= n || lp.objective[b] == 0) continue;
    Rational cb = lp.objective[b];
    for (std::size_t j = 0; j < art0; ++j) tab.obj(j) -= cb * tab.at(i, j);
    tab.obj_value() -= cb * tab.rhs(i);
  }
  if (!tab.optimize(art0)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0);
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = tab.rhs(i);
  sol.value = -tab.obj_value();
  return sol;
}

}  // namespace gkz::detail
