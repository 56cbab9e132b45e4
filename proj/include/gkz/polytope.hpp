#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gkz/arith.hpp"
#include "gkz/cone.hpp"

namespace gkz {

// Full-dimensional lattice polytope Q in Z^g with its lattice points I.
//
// Lifted coordinates: a point x of X̄ maps to (x - o, 1) in 𝕏 = Z^{g+1}, where
// the origin o is the lexicographically first vertex. The degree is the last
// coordinate.
class LatticePolytope {
 public:
  // Convex hull of the given integer points. Throws PreconditionError when the
  // hull is not full-dimensional.
  explicit LatticePolytope(const std::vector<IntVec>& points);

  std::size_t dim() const { return g_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<IntVec>& vertices() const { return vertices_; }
  const std::vector<IntVec>& points() const { return points_; }
  const std::vector<std::size_t>& vertex_indices() const { return vertex_indices_; }
  const IntVec& origin() const { return vertices_.front(); }

  const IntVec& point(std::size_t i) const { return points_[i]; }
  const IntVec& lifted(std::size_t i) const { return lifted_[i]; }
  const std::vector<IntVec>& lifted_points() const { return lifted_; }
  IntVec lift(std::span<const Integer> x) const;
  RatVec lift(std::span<const Rational> x) const;
  // (g+1) x N matrix whose columns are the lifted points.
  const IntMatrix& lift_matrix() const { return lift_matrix_; }

  // C(Q) in 𝕏.
  const RationalCone& cone() const { return cone_; }
  bool contains(std::span<const Rational> x) const;
  std::optional<std::size_t> index_of(std::span<const Integer> p) const;

  // g! vol(Q).
  Integer normalized_volume() const;

 private:
  std::size_t g_ = 0;
  std::vector<IntVec> vertices_;
  std::vector<IntVec> points_;
  std::vector<std::size_t> vertex_indices_;
  std::vector<IntVec> lifted_;
  IntMatrix lift_matrix_;
  RationalCone cone_;
};

using PolytopePtr = std::shared_ptr<const LatticePolytope>;

PolytopePtr make_polytope(const std::vector<IntVec>& points);

// All lattice points of Q, sorted lexicographically.
const std::vector<IntVec>& lattice_points(const LatticePolytope& q);

// Normalized volume of the convex hull of lifted points (all with last
// coordinate 1) of full dimension k = size of each vector.
Integer normalized_volume(const std::vector<IntVec>& lifted);

// Pulling triangulation of conv(lifted) (given by indices into lifted); each
// simplex is a list of indices.
std::vector<std::vector<std::size_t>> pulling_triangulation(const std::vector<IntVec>& lifted,
                                                            const std::vector<std::size_t>& indices);

// Vertex subsets (indices) of the facets of conv(lifted[indices]), inside its
// own affine span.
std::vector<std::vector<std::size_t>> facet_vertex_sets(const std::vector<IntVec>& lifted,
                                                        const std::vector<std::size_t>& indices);

// Indices of the extreme points among lifted[indices].
std::vector<std::size_t> extreme_points(const std::vector<IntVec>& lifted, const std::vector<std::size_t>& indices);

}  // namespace gkz
