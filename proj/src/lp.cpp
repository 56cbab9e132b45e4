#include "gkz/lp.hpp"

#include <optional>

#include "detail/simplex.hpp"
#include "gkz/errors.hpp"

namespace gkz {

namespace {

using detail::LpProblem;
using detail::LpStatus;
using detail::Sense;

// maximize s subject to the constraints with s subtracted from those flagged
// in shift, s <= 1. Variables: x+ (d), x- (d), s+, s-.
std::optional<RatVec> shifted_witness(std::size_t d, const std::vector<LinearConstraint>& cs,
                                      const std::vector<bool>& shift, bool need_positive) {
  LpProblem lp;
  lp.num_vars = 2 * d + 2;
  lp.objective.assign(lp.num_vars, 0);
  lp.objective[2 * d] = 1;
  lp.objective[2 * d + 1] = -1;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    RatVec row(lp.num_vars);
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = cs[i].coeffs[j];
      row[d + j] = -cs[i].coeffs[j];
    }
    if (cs[i].rel != Relation::Eq && shift[i]) {
      row[2 * d] = -1;
      row[2 * d + 1] = 1;
    }
    lp.rows.push_back(std::move(row));
    lp.sense.push_back(cs[i].rel == Relation::Eq ? Sense::Eq : Sense::Ge);
    lp.rhs.push_back(-cs[i].constant);
  }
  RatVec cap(lp.num_vars);
  cap[2 * d] = 1;
  cap[2 * d + 1] = -1;
  lp.rows.push_back(cap);
  lp.sense.push_back(Sense::Le);
  lp.rhs.push_back(1);

  auto sol = detail::solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  if (need_positive ? sol.value <= 0 : sol.value < 0) return std::nullopt;
  RatVec x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = sol.x[j] - sol.x[d + j];
  return x;
}

std::optional<IntVec> certificate(std::size_t d, const std::vector<LinearConstraint>& cs) {
  // Variables: y_i >= 0 per constraint, plus a negative part for equations.
  std::vector<std::size_t> neg_index(cs.size(), 0);
  std::size_t nv = cs.size();
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].rel == Relation::Eq) neg_index[i] = nv++;
  LpProblem lp;
  lp.num_vars = nv;
  lp.objective.assign(nv, 0);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    lp.objective[i] = -cs[i].constant + (cs[i].rel == Relation::Gt ? 1 : 0);
    if (cs[i].rel == Relation::Eq) lp.objective[neg_index[i]] = cs[i].constant;
  }
  for (std::size_t j = 0; j < d; ++j) {
    RatVec row(nv);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      row[i] = cs[i].coeffs[j];
      if (cs[i].rel == Relation::Eq) row[neg_index[i]] = -cs[i].coeffs[j];
    }
    lp.rows.push_back(std::move(row));
    lp.sense.push_back(Sense::Eq);
    lp.rhs.push_back(0);
  }
  RatVec by(nv);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    by[i] = cs[i].constant;
    if (cs[i].rel == Relation::Eq) by[neg_index[i]] = -cs[i].constant;
  }
  lp.rows.push_back(by);
  lp.sense.push_back(Sense::Le);
  lp.rhs.push_back(0);
  lp.rows.push_back(RatVec(nv, 1));
  lp.sense.push_back(Sense::Le);
  lp.rhs.push_back(1);

  auto sol = detail::solve_lp(lp);
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return std::nullopt;
  RatVec y(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    y[i] = sol.x[i];
    if (cs[i].rel == Relation::Eq) y[i] -= sol.x[neg_index[i]];
  }
  return primitive(y);
}

}  // namespace

LpResult lp_feasible(std::size_t dim, const std::vector<LinearConstraint>& constraints) {
  for (const auto& c : constraints)
    if (c.coeffs.size() != dim) throw PreconditionError("lp_feasible: dimension mismatch");
  bool any_strict = false;
  std::vector<bool> all(constraints.size(), true), strict_only(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    strict_only[i] = constraints[i].rel == Relation::Gt;
    any_strict = any_strict || strict_only[i];
  }
  // Centered witness first, then one that only pushes the strict constraints.
  if (auto x = shifted_witness(dim, constraints, all, true)) return LpWitness{*x};
  if (auto x = shifted_witness(dim, constraints, strict_only, any_strict)) return LpWitness{*x};
  if (auto y = certificate(dim, constraints)) return FarkasCertificate{*y};
  throw Error("lp_feasible: neither witness nor certificate found");
}

LpResult lp_feasible(const std::vector<RatVec>& inequalities, const std::vector<bool>& strict) {
  if (inequalities.size() != strict.size()) throw PreconditionError("lp_feasible: flag count mismatch");
  std::size_t d = inequalities.empty() ? 0 : inequalities.front().size();
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < inequalities.size(); ++i)
    cs.push_back({inequalities[i], 0, strict[i] ? Relation::Gt : Relation::Ge});
  return lp_feasible(d, cs);
}

bool satisfies(const std::vector<LinearConstraint>& constraints, const RatVec& x) {
  for (const auto& c : constraints) {
    Rational v = dot(c.coeffs, x) + c.constant;
    switch (c.rel) {
      case Relation::Ge:
        if (v < 0) return false;
        break;
      case Relation::Gt:
        if (v <= 0) return false;
        break;
      case Relation::Eq:
        if (v != 0) return false;
        break;
    }
  }
  return true;
}

bool certifies_infeasibility(const std::vector<LinearConstraint>& constraints, const IntVec& y) {
  if (y.size() != constraints.size() || constraints.empty()) return false;
  const std::size_t d = constraints.front().coeffs.size();
  RatVec sum(d);
  Rational c = 0;
  bool strict_used = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (constraints[i].rel != Relation::Eq && y[i] < 0) return false;
    if (constraints[i].rel == Relation::Gt && y[i] > 0) strict_used = true;
    for (std::size_t j = 0; j < d; ++j) sum[j] += y[i] * constraints[i].coeffs[j];
    c += y[i] * constraints[i].constant;
  }
  if (!is_zero(sum)) return false;
  return c < 0 || (c == 0 && strict_used);
}

}  // namespace gkz
