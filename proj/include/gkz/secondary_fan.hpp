#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gkz/cone.hpp"
#include "gkz/paving.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

// The lattice 𝕃 = ker(p: Z^I -> 𝕏, e_ω -> (ω, 1)) and its dual.
//
// Coordinates on 𝕃*_R: a lift ψ maps to y = L ψ where the rows of L are the
// basis of 𝕃. Affine lifts map to 0. An element c of 𝕃 acts on y through its
// coordinates in the basis L.
class LatticeLContext {
 public:
  explicit LatticeLContext(PolytopePtr q);

  const LatticePolytope& polytope() const { return *q_; }
  const PolytopePtr& polytope_ptr() const { return q_; }
  std::size_t n() const { return q_->size(); }
  std::size_t g() const { return q_->dim(); }
  std::size_t rank() const { return basis_.size(); }  // r = N - g - 1

  const IntMatrix& p_matrix() const { return q_->lift_matrix(); }
  const std::vector<IntVec>& l_basis() const { return basis_; }
  // Basis of Aff(X̄, Z) inside Z^I (rows of p, Hermite reduced).
  const std::vector<IntVec>& aff_basis() const { return aff_; }
  // Order of the torsion subgroup of Z^I / Aff(X̄, Z).
  const Integer& torsion_order() const { return torsion_; }

  // y = L v.
  RatVec to_lstar(std::span<const Rational> v) const;
  // Some lift with to_lstar(lift) = y (the one orthogonal to Aff).
  RatVec from_lstar(std::span<const Rational> y) const;
  // Coordinates of an element of 𝕃 (or 𝕃_Q) in the basis L.
  IntVec l_coordinates(const IntVec& c) const;
  RatVec l_coordinates(const RatVec& c) const;
  // Σ λ_i L_i.
  RatVec from_l_coordinates(std::span<const Rational> lambda) const;
  bool in_l(std::span<const Integer> v) const;

 private:
  PolytopePtr q_;
  std::vector<IntVec> basis_;
  std::vector<IntVec> aff_;
  Integer torsion_;
  RatMatrix gram_inverse_;
};

struct GkzChamber {
  Triangulation triangulation;
  std::vector<IntVec> tilde_inequalities;  // in Z^I, each an element of 𝕃
  RationalCone tilde_cone;                 // C̃(𝒯) in R^I
  RationalCone cone;                       // C(𝒯) in 𝕃*_R
  std::vector<std::size_t> i_empty;
  RatVec witness;                          // a lift strictly inside C̃(𝒯)

  bool contains_lift(std::span<const Rational> psi) const;
};

// Circuit inequality of an interior wall of a triangulation: the affine
// relation on the two simplices, positive at the two apexes, made primitive.
IntVec fold_inequality(const Triangulation& t, const Wall& w);

GkzChamber gkz_cone(const LatticeLContext& ctx, const Triangulation& t);

RatVec project_to_lstar(std::span<const Rational> v, const LatticeLContext& ctx);

// First (g+1)-subset of I in lexicographic order whose lifted points form a
// basis of 𝕏.
std::optional<std::vector<std::size_t>> find_regular_simplex(const LatticePolytope& q);

struct PsiMap {
  std::vector<std::size_t> sigma;
  std::vector<IntVec> values;    // Ψ(ω) in Z^I
  std::vector<IntVec> l_coords;  // Ψ(ω) in the basis of 𝕃
};

// Ψ(ω) = e_ω - Σ_v β_v(ω) e_v where (ω,1) = Σ β_v (v,1) over the vertices of σ.
// Throws NoRegularSimplex when sigma is unset and no regular simplex exists,
// PreconditionError when the given sigma is not regular.
PsiMap psi_map(const LatticeLContext& ctx, std::optional<std::vector<std::size_t>> sigma = std::nullopt);

struct RegularTriangulation {
  Triangulation triangulation;
  RatVec witness;
};

// Every triangulation of Q with vertices in I, by facet-matching search.
std::vector<Triangulation> enumerate_all_triangulations(const PolytopePtr& q);

enum class EnumerationMethod { Oracle, Traversal };

// Sorted by Paving::key().
std::vector<RegularTriangulation> enumerate_regular_triangulations(const LatticeLContext& ctx,
                                                                   EnumerationMethod method = EnumerationMethod::Traversal);

struct FanWall {
  std::size_t a = 0, b = 0;  // chamber indices, a < b
  RationalCone cone;         // common facet
};

struct Codim2Face {
  RationalCone cone;
  std::vector<std::size_t> chambers;  // every chamber containing the face
};

struct FanChecks {
  bool dimensions = false;     // each chamber has dimension r
  bool intersections = false;  // pairwise intersections are faces of both
  bool complete = false;       // every sampled direction is covered
  bool generic_unique = false; // directions interior to a chamber lie in no other
  std::size_t samples = 0;
};

struct SecondaryFan {
  LatticeLContext ctx;
  std::vector<GkzChamber> chambers;
  std::vector<FanWall> walls;
  std::vector<std::vector<std::size_t>> adjacency;
  std::vector<Codim2Face> codim2;
  PsiMap psi;
  FanChecks checks;

  std::optional<std::size_t> chamber_index(const Triangulation& t) const;
  std::optional<std::size_t> chamber_of(std::span<const Rational> y) const;
};

struct FanOptions {
  EnumerationMethod method = EnumerationMethod::Traversal;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

SecondaryFan build_secondary_fan(const PolytopePtr& q, const FanOptions& options = {});

}  // namespace gkz
