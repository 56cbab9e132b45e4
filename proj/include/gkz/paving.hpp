#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gkz/cone.hpp"
#include "gkz/lp.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

// A cell of a paving. Indices refer to the sorted lattice points I of Q.
struct Cell {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> points;  // every point of I lying in the cell

  friend bool operator==(const Cell& a, const Cell& b) { return a.vertices == b.vertices; }
  friend bool operator<(const Cell& a, const Cell& b) { return a.vertices < b.vertices; }
};

// Interior codimension-one cell shared by two maximal cells.
struct Wall {
  std::vector<std::size_t> vertices;
  std::size_t plus = 0;   // maximal cell on which normal is positive
  std::size_t minus = 0;
  IntVec normal;          // primitive covector on 𝕏 vanishing on the wall
};

class Paving {
 public:
  Paving() = default;

  // Validates the paving axioms exactly; throws InvalidPaving.
  static Paving from_cells(PolytopePtr q, const std::vector<std::vector<std::size_t>>& cells);
  // No pairwise validation; for cells that come from a lower hull.
  static Paving trusted(PolytopePtr q, const std::vector<std::vector<std::size_t>>& cell_vertices);

  const LatticePolytope& polytope() const { return *q_; }
  const PolytopePtr& polytope_ptr() const { return q_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const RationalCone& cell_cone(std::size_t i) const { return cones_[i]; }
  const std::vector<Wall>& interior_walls() const { return walls_; }

  std::vector<std::size_t> used_points() const;
  std::vector<std::size_t> empty_points() const;  // I_∅
  bool is_triangulation() const;

  // Vertex sets of every face of every maximal cell (the face closure), sorted
  // by size then lexicographically.
  std::vector<std::vector<std::size_t>> all_cells() const;

  std::vector<std::size_t> cells_containing(std::span<const Rational> x) const;
  std::optional<std::size_t> cell_containing(std::span<const Rational> x) const;

  // Every cell of this paving lies inside some cell of coarser.
  bool refines(const Paving& coarser) const;

  // Stable textual key, e.g. "0,1|1,2".
  std::string key() const;

  friend bool operator==(const Paving& a, const Paving& b) { return a.cells_ == b.cells_; }

 private:
  void build(PolytopePtr q, std::vector<std::vector<std::size_t>> cell_vertices);

  PolytopePtr q_;
  std::vector<Cell> cells_;
  std::vector<RationalCone> cones_;
  std::vector<Wall> walls_;
};

using Triangulation = Paving;

// Whether conv(a) ∩ conv(b) is a common face (indices into lifted points).
bool intersect_properly(const std::vector<IntVec>& lifted, const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b);

// A function on Q that is affine on each maximal cell of a paving. Piece i is a
// k x (g+1) matrix acting on lifted coordinates, so the value at x is
// piece * (x - o, 1).
class PiecewiseAffineFn {
 public:
  PiecewiseAffineFn() = default;
  PiecewiseAffineFn(Paving paving, std::vector<RatMatrix> pieces);

  const Paving& paving() const { return paving_; }
  const std::vector<RatMatrix>& pieces() const { return pieces_; }
  std::size_t value_dim() const { return value_dim_; }

  RatVec evaluate(std::span<const Rational> x) const;
  RatVec evaluate_lifted(std::span<const Rational> xhat) const;  // homogeneous, on C(Q)
  RatVec evaluate_point(std::size_t i) const;                    // at the lattice point I[i]
  Rational scalar(std::span<const Rational> x) const;           // value_dim == 1

  // Adjacent pieces agree on every interior wall.
  bool is_continuous() const;

  friend PiecewiseAffineFn operator+(const PiecewiseAffineFn& a, const PiecewiseAffineFn& b);
  friend PiecewiseAffineFn operator-(const PiecewiseAffineFn& a, const PiecewiseAffineFn& b);
  PiecewiseAffineFn scaled(const Rational& s) const;

 private:
  Paving paving_;
  std::vector<RatMatrix> pieces_;
  std::size_t value_dim_ = 1;
};

struct BendingData {
  Wall wall;
  IntVec n;          // n_rho, equal to wall.normal
  RatVec p;          // bending parameter, piece(plus) - piece(minus) = p ⊗ n
  bool in_monoid = true;
};

// With monoid unset, scalar functions are checked against p >= 0 and vector
// valued ones against the nonnegative orthant.
std::vector<BendingData> bending_parameters(const PiecewiseAffineFn& f, const RationalCone* monoid = nullptr);

// Maximal cells are the projections of the lower facets of {(ω, ψ(ω))}.
Paving regular_subdivision(const PolytopePtr& q, const RatVec& psi);

struct CoherenceWitness {
  RatVec lift;
};
using CoherenceResult = std::variant<CoherenceWitness, FarkasCertificate>;
CoherenceResult is_coherent(const Paving& p);

// g_{ψ,𝒯}: affine interpolation of ψ on each simplex.
PiecewiseAffineFn interpolate(const Paving& t, const RatVec& psi);
// Vector-valued version: values[i] is the value at I[i].
PiecewiseAffineFn interpolate(const Paving& t, const std::vector<RatVec>& values);

Paving star_subdivision(const Paving& t, std::size_t omega);

}  // namespace gkz
