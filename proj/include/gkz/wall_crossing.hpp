#pragma once

#include <optional>
#include <vector>

#include "gkz/paving.hpp"
#include "gkz/secondary_fan.hpp"

namespace gkz {

// g_{Ψ,𝒯₁} - g_{Ψ,𝒯₂}. The two summands live on different pavings, so the
// difference is kept as a pair and evaluated pointwise. Values are in Q^I
// (elements of 𝕃_Q).
class DifferenceFunction {
 public:
  DifferenceFunction(PiecewiseAffineFn first, PiecewiseAffineFn second)
      : first_(std::move(first)), second_(std::move(second)) {}

  const PiecewiseAffineFn& first() const { return first_; }
  const PiecewiseAffineFn& second() const { return second_; }
  RatVec evaluate(std::span<const Rational> x) const;
  RatVec evaluate_point(std::size_t i) const;

 private:
  PiecewiseAffineFn first_, second_;
};

// g_{Ψ,𝒯}: interpolation of Ψ with values in Q^I.
PiecewiseAffineFn g_psi(const Triangulation& t, const PsiMap& psi);

DifferenceFunction g12(const Triangulation& t1, const Triangulation& t2, const PsiMap& psi);

enum class WallKind { Divisorial, Flipping };

struct WallCrossing {
  Triangulation t1, t2;
  WallKind kind = WallKind::Divisorial;

  // divisorial: ω, the face σ₀ of the coarse triangulation carrying it and the
  // barycentric coordinates a of ω on σ₀
  std::size_t omega = 0;
  std::vector<std::size_t> sigma0;
  RatVec a;
  bool first_is_fine = false;
  bool star_verified = false;  // fine == star_subdivision(coarse, ω)

  // flipping: circuit J = J₋ ∪ J₊ with conv(J₋) a face of 𝒯₁ and conv(J₊) a
  // face of 𝒯₂; b indexed like circuit, Σ_{J₊} b = 1 = -Σ_{J₋} b
  std::vector<std::size_t> circuit, j_minus, j_plus;
  RatVec b;
  std::optional<Wall> flip_wall;  // the wall ς of 𝒯₁ whose class is parallel to q_τ
  Rational multiplier;            // q_τ = multiplier * [V(C(ς))]
  Rational multiplier_formula;    // mult(σ_k)(-b_k)/mult(ς), σ_k = σ_{J \ {k}}
  // k, l: apexes of the plus and minus cells of ς; σ_k is the minus cell
  std::size_t k = 0, l = 0;
  Integer mult_sigma_k, mult_sigma_l, mult_wall;

  RatVec omega_point;  // ω as a rational point of Q
  RatVec q_tau;        // g¹²(ω) in Q^I
  RatVec q_tau_l;      // in 𝕃 coordinates
  IntVec q_tau_primitive;  // primitive in 𝕃_τ coordinates
  Rational q_tau_scale;    // q_tau = scale * primitive (in 𝕃_τ coordinates)

  // +1 when q_τ ∈ C(𝒯₁)^∨ and -q_τ ∈ C(𝒯₂)^∨; -1 for the opposite placement;
  // 0 when neither holds exactly
  int sign = 0;
  bool lineality_ok = false;  // q_τ spans the lineality of C(𝒯₁)^∨ + C(𝒯₂)^∨

  Paving wall_paving;  // the paving 𝒫 induced by the relative interior of the wall
};

// Throws NotAdjacent unless C(𝒯₁) ∩ C(𝒯₂) is a common facet.
WallCrossing classify_wall(const LatticeLContext& ctx, const Triangulation& t1, const Triangulation& t2,
                           const PsiMap& psi);
WallCrossing classify_wall(const LatticeLContext& ctx, const Triangulation& t1, const Triangulation& t2);

// Points of Q(1/2), i.e. x in Q with 2x integral.
std::vector<RatVec> half_points(const LatticePolytope& q);

// g¹³ = g¹² + g²³ at every sample point (default: Q(1/2)).
bool cocycle_check(const Triangulation& t1, const Triangulation& t2, const Triangulation& t3, const PsiMap& psi,
                   const std::vector<RatVec>& samples = {});

struct TauContext {
  std::vector<RatVec> l_tau;  // basis of 𝕃_τ = 𝕃₁ + 𝕃₂ in 𝕃 coordinates
  Integer index1, index2;     // [𝕃_τ : 𝕃_i]
  RationalCone s_tau;         // C(𝒯₁)^∨ + C(𝒯₂)^∨ in 𝕃 coordinates
  std::vector<RatVec> units;  // basis of the unit group S_τ^* (𝕃 coordinates)
};

TauContext tau_context(const LatticeLContext& ctx, const Triangulation& t1, const Triangulation& t2);

// Coordinates of v (𝕃 coordinates) in a rational lattice basis; nullopt when
// v is outside the span.
std::optional<RatVec> coordinates_in(const std::vector<RatVec>& basis, const RatVec& v);

}  // namespace gkz
