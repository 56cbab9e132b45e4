#pragma once

#include <vector>

#include "gkz/cone.hpp"
#include "gkz/paving.hpp"
#include "gkz/secondary_fan.hpp"

namespace gkz {

// Cl = Z^{Σ(1)} / Aff(X̄, Z).
struct ClassGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

// Toric data of the fan Σ_𝒫 over a paving.
//
// Piecewise affine functions are handled in coefficient space: one covector on
// 𝕏 per maximal cell, cell-major. The map to Z^I evaluates at lattice points.
struct ToricFanData {
  LatticeLContext ctx;
  Paving paving;
  std::vector<RationalCone> cones;   // C(σ) in 𝕏 for maximal σ
  std::vector<std::size_t> rays;     // Σ_𝒫(1), as indices of I; generator (ω, 1)
  std::vector<IntVec> pa_basis;      // PA(𝒫, Z) inside Z^I
  Integer pa_index;                  // [saturation : PA]
  ClassGroup class_group;
  // Basis (in 𝕃-coordinates) of 𝕃_𝒫, the dual of the image of
  // PA(𝒫, Z) ⊕ Z^{I_∅} in 𝕃*. Empty when that image is not of full rank.
  std::vector<RatVec> l_p_basis;

  IntMatrix continuity;   // equations on coefficient space
  IntMatrix convexity;    // inequalities on coefficient space, one per wall
  IntMatrix evaluation;   // N x (cells * (g+1))
};

ToricFanData build_fan_data(const LatticeLContext& ctx, const Paving& p);

// Convex 𝒫-piecewise affine functions modulo Aff, in 𝕃* coordinates.
RationalCone nef_cone(const ToricFanData& fd);
// Dual of the nef cone, in 𝕃 coordinates.
RationalCone eff_curve_cone(const ToricFanData& fd);
// Hilbert basis of the effective curve cone in 𝕃_𝒫 (𝕃 coordinates), or its
// rays when the cone is not pointed or 𝕃_𝒫 is unavailable.
std::vector<RatVec> eff_curve_generators(const ToricFanData& fd);

struct CurveClass {
  RatVec covector;  // element of 𝕃_Q inside Q^I
  Wall wall;
  Integer mult_wall;
  Integer mult_plus, mult_minus;  // mult of the two simplices
  RatVec b;                       // circuit coefficients on wall vertices then the two apexes
};

// [V(C(ς))]: the circuit relation on the two simplices with coefficient
// mult(ς)/mult(σ) at the apex of σ.
CurveClass wall_curve_class(const ToricFanData& fd, const Wall& w);

bool is_relative_minimal(const ToricFanData& fd);

// Vertices of P_D = {m : <m, (ω,1)> <= D(ω) for ω in the given points}.
std::vector<RatVec> p_d_vertices(const LatticePolytope& q, const RatVec& d, const std::vector<std::size_t>& points);

// Whether D, strictly inside some chamber, induces 𝒯 with positive I_∅ part
// and P_D = P_E with E the interpolation of D on 𝒯. Throws NotInterior when
// D lies on a wall of the secondary fan.
bool mori_chamber_check(const LatticeLContext& ctx, const Triangulation& t, const RatVec& d);

struct MovingCone {
  RationalCone cone;                  // convex hull of the chambers below
  std::vector<std::size_t> chambers;  // chambers with I_∅ = ∅
  // For every other chamber C, dim(C ∩ cone) < r; together with completeness
  // of the fan this shows the union is the convex cone.
  bool convex = false;
};

MovingCone moving_cone(const SecondaryFan& fan);

}  // namespace gkz
