#pragma once

#include <string>
#include <vector>

#include "gkz/arith.hpp"

namespace gkz {

// Closed rational polyhedral cone in R^d, kept in both representations.
//
// Canonical form (two cones are equal iff these agree):
//   lineality  - reduced echelon basis of the lineality space, primitive rows
//   rays       - extreme rays projected onto the orthogonal complement of the
//                lineality space, primitive, sorted
//   equations  - reduced echelon basis of span(C)^perp, primitive rows
//   facets     - irredundant inequalities a.x >= 0 projected onto span(C),
//                primitive, sorted
class RationalCone {
 public:
  RationalCone() = default;

  static RationalCone from_generators(std::size_t dim, const std::vector<IntVec>& rays,
                                      const std::vector<IntVec>& lineality = {});
  static RationalCone from_generators(std::size_t dim, const std::vector<RatVec>& rays,
                                      const std::vector<RatVec>& lineality = {});
  static RationalCone from_inequalities(std::size_t dim, const std::vector<IntVec>& inequalities,
                                        const std::vector<IntVec>& equations = {});
  static RationalCone from_inequalities(std::size_t dim, const std::vector<RatVec>& inequalities,
                                        const std::vector<RatVec>& equations = {});
  static RationalCone full_space(std::size_t dim);
  static RationalCone origin(std::size_t dim);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return dim_ - equations_.size(); }
  std::size_t lineality_dim() const { return lineality_.size(); }
  bool is_pointed() const { return lineality_.empty(); }

  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<IntVec>& lineality() const { return lineality_; }
  const std::vector<IntVec>& facets() const { return facets_; }
  const std::vector<IntVec>& equations() const { return equations_; }

  const std::string& lattice_name() const { return lattice_; }
  RationalCone& with_lattice_name(std::string name) {
    lattice_ = std::move(name);
    return *this;
  }

  bool contains(std::span<const Rational> x) const;
  bool contains(std::span<const Integer> x) const;
  bool contains(const RationalCone& other) const;
  bool in_relative_interior(std::span<const Rational> x) const;
  // A point in the relative interior (sum of rays; the origin for linear spaces).
  IntVec relative_interior_point() const;

  // Smallest face containing x (x must lie in the cone).
  RationalCone face_containing(std::span<const Rational> x) const;
  bool is_face_of(const RationalCone& big) const;

  RationalCone intersect(const RationalCone& other) const;
  RationalCone intersect_hyperplane(const IntVec& normal) const;
  RationalCone minkowski_sum(const RationalCone& other) const;
  RationalCone dual() const;

  // Image under x -> m x (m has ambient_dim columns).
  RationalCone image(const IntMatrix& m) const;
  // Preimage {y : m y in C} (m has ambient_dim rows).
  RationalCone preimage(const IntMatrix& m) const;

  friend bool operator==(const RationalCone& a, const RationalCone& b);

 private:
  void canonicalize_rays(std::vector<IntVec> rays, std::vector<IntVec> lines);
  void canonicalize_facets(std::vector<IntVec> facets, std::vector<IntVec> equations);

  std::size_t dim_ = 0;
  std::vector<IntVec> rays_;
  std::vector<IntVec> lineality_;
  std::vector<IntVec> facets_;
  std::vector<IntVec> equations_;
  std::string lattice_;
};

RationalCone dual_cone(const RationalCone& c);

// Minimal generating set of C ∩ lattice, lexicographically sorted. The lattice
// defaults to Z^d; otherwise it is spanned by lattice_basis (rows). Throws
// PreconditionError when C has nontrivial lineality.
std::vector<IntVec> hilbert_basis(const RationalCone& c, const std::vector<IntVec>& lattice_basis = {});

}  // namespace gkz
