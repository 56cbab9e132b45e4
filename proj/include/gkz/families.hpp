#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkz/cone.hpp"
#include "gkz/graded.hpp"
#include "gkz/paving.hpp"
#include "gkz/secondary_fan.hpp"

namespace gkz {

// A toric monoid P = σ_P ∩ P^gp with P^gp = Z^k.
struct MonoidP {
  std::string name;
  std::size_t rank = 0;
  RationalCone cone;             // σ_P
  std::vector<IntVec> generators;
  bool sharp = true;

  static MonoidP naturals(std::size_t k = 1);
  // σ_P from generators; generators are replaced by the Hilbert basis when the
  // cone is pointed.
  static MonoidP from_generators(std::string name, std::size_t k, const std::vector<IntVec>& gens,
                                 const std::vector<IntVec>& lineality = {});

  bool contains(std::span<const Integer> p) const { return cone.contains(p); }
  // u ⪰_P v
  bool above(std::span<const Integer> u, std::span<const Integer> v) const;
  // p is invertible in P
  bool is_unit(std::span<const Integer> p) const;
};

// Affine form of values on every cell of a paving (cells need not be simplices).
// Throws PreconditionError when the values are not affine on some cell.
PiecewiseAffineFn fit_piecewise_affine(const Paving& p, const std::vector<RatVec>& values);

struct ThetaProduct {
  GradedPoint gamma;  // α + β in 𝕃(X̄); as a point, (nα + mβ)/(n+m)
  IntVec correction;  // nφ(α) + mφ(β) - (n+m)φ(γ)
};

struct TwistedElement {
  GradedPoint alpha;
  IntVec p;
  friend bool operator==(const TwistedElement& a, const TwistedElement& b) {
    return a.alpha == b.alpha && a.p == b.p;
  }
};

// S(Q) ⋊ P, truncated by degree.
class TwistedMonoid {
 public:
  // φ has values in P^gp; throws PreconditionError when φ is not integral on
  // the truncated S(Q).
  TwistedMonoid(PolytopePtr q, PiecewiseAffineFn phi, MonoidP p, int truncation = 4);

  const LatticePolytope& polytope() const { return *q_; }
  const PolytopePtr& polytope_ptr() const { return q_; }
  const PiecewiseAffineFn& phi() const { return phi_; }
  const MonoidP& monoid() const { return p_; }
  int truncation() const { return truncation_; }
  // S(Q) to the truncation degree, sorted by (degree, point).
  const std::vector<GradedPoint>& elements() const { return elements_; }

  // deg(α) φ(α / deg α); zero at the origin.
  IntVec phi_tilde(const GradedPoint& a) const;
  IntVec correction(const GradedPoint& a, const GradedPoint& b) const;
  TwistedElement add(const TwistedElement& a, const TwistedElement& b) const;
  // Every correction of the truncated table lies in P.
  bool corrections_in_p() const;
  // φ is P-convex: every bending parameter lies in σ_P.
  bool is_p_convex() const;

 private:
  PolytopePtr q_;
  PiecewiseAffineFn phi_;
  MonoidP p_;
  int truncation_;
  std::vector<GradedPoint> elements_;
};

ThetaProduct theta_multiply(const TwistedMonoid& tm, const GradedPoint& a, const GradedPoint& b);

// Q_φ = {(α, h) : α ∈ Q, h ⪰_P φ(α)} over R^g × R^k. Each inequality row is
// (a, c) with a·(α, h) + c >= 0.
struct PolyhedronQPhi {
  std::size_t g = 0, k = 0;
  std::vector<RatVec> inequalities;
  RationalCone recession;  // {0} × σ_P

  bool contains(std::span<const Rational> alpha, std::span<const Rational> h) const;
};

// Throws NotConvex when some bending parameter of φ lies outside σ_P.
PolyhedronQPhi q_phi(const LatticePolytope& q, const PiecewiseAffineFn& phi, const MonoidP& p);

// H_𝒫 and its saturation.
//
// Coordinates: PA(𝒫, Z) has basis pa_basis (value vectors on I). Functionals
// on PA vanishing on Aff form ann(Aff), with basis ann (rows, in the dual
// basis of pa_basis); elements of H^gp are written in that basis (Z^{k'}).
// PA/Aff is written through y = ann · x for x in pa_basis coordinates, so
// pairing is c·y.
struct HPMonoid {
  Paving paving;
  std::vector<IntVec> pa_basis;
  std::vector<IntVec> ann;
  std::size_t rank = 0;                 // k' = rank PA - rank Aff
  std::vector<IntVec> generators;       // distinct nonzero α*β
  std::vector<IntVec> hsat_hilbert;     // Hilbert basis of cone(generators) ∩ Z^{k'}
  RationalCone convex_cone;             // C(𝒫) in y coordinates
  std::vector<IntVec> cpz_dual_hilbert; // Hilbert basis of C(𝒫, Z)^∨
  bool sharp = false;
  bool hgp_is_ann = false;              // generators span all of ann(Aff) ∩ Z^k
  bool saturation_equal = false;        // hsat_hilbert == cpz_dual_hilbert

  // α*β in H^gp coordinates.
  IntVec star(const GradedPoint& a, const GradedPoint& b) const;
  // y coordinates of a PA function given by values on I.
  RatVec pa_class(const RatVec& values) const;

  std::vector<PiecewiseAffineFn> pa_functions;  // one per pa_basis entry
};

// Throws PreconditionError when 𝒫 is not coherent.
HPMonoid build_hp(const PolytopePtr& q, const Paving& p, int truncation = 2);

// The universal φ with values in H^gp, zero on the first maximal cell.
PiecewiseAffineFn universal_phi(const HPMonoid& hp);
// H^sat as a MonoidP.
MonoidP hp_monoid(const HPMonoid& hp);

// p_ρ(ψ) = ψ_i(ω) - ψ_j(ω) per wall (ω a lattice point at height one on the
// plus side), in H^gp coordinates.
std::vector<IntVec> universal_bending(const HPMonoid& hp);

struct ThetaSection {
  std::vector<RatVec> exponents;    // Ψ(ω) - g_{Ψ,𝒯}(ω) in Q^I
  std::vector<RatVec> exponents_l;  // same in 𝕃 coordinates
  std::vector<bool> unit;           // exponent is zero
  std::vector<std::size_t> used;    // 𝒯 ∩ I
  bool flags_match_used = false;    // unit exactly on used points
  bool in_l_t = false;              // every exponent lies in 𝕃_𝒯
  bool above = false;               // every exponent lies in C(𝒯)^∨
  bool stable = false;              // used points have unit coefficients
};

ThetaSection theta_section(const LatticeLContext& ctx, const Triangulation& t, const PsiMap& psi);

struct Specialization {
  TwistedMonoid family;          // over N, φ' = v ∘ φ on the coarser paving
  Paving central_fiber;          // 𝒫'
  std::vector<Integer> bending;  // v(p_ρ) per wall of the original paving
};

// Throws PreconditionError when v is negative on some generator of P.
Specialization specialize(const TwistedMonoid& tm, const IntVec& v);

// (α, p) ↦ (α, p + deg(α) ψ(α)) for an affine ψ with values in P^gp.
TwistedElement shift(const TwistedElement& e, const LatticePolytope& q, const RatMatrix& psi);

}  // namespace gkz
