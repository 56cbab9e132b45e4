#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkz/errors.hpp"
#include "gkz/secondary_fan.hpp"
#include "support.hpp"

using namespace gkz;
using namespace testing;

namespace {

// Conditions a) and b) of the chamber definition, evaluated geometrically.
bool in_chamber_by_geometry(const Triangulation& t, const RatVec& psi) {
  auto g = interpolate(t, psi);
  for (const auto& b : bending_parameters(g))
    if (b.p[0] < 0) return false;
  for (auto w : t.empty_points())
    if (g.evaluate_point(w)[0] > psi[w]) return false;
  return true;
}

RatVec affine_lift(const LatticePolytope& q, long seed) {
  RatVec v(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.dim() + 1; ++j) v[i] += Rational((seed * 7 + static_cast<long>(j) * 3) % 11 - 5) * q.lifted(i)[j];
  return v;
}

std::set<std::string> keys(const std::vector<RegularTriangulation>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(t.triangulation.key());
  return out;
}

}  // namespace

TEST_CASE("the lattice 𝕃") {
  LatticeLContext ctx(segment());
  CHECK(ctx.rank() == 1);
  CHECK(ctx.l_basis() == std::vector<IntVec>{iv({1, -2, 1})});
  CHECK(ctx.torsion_order() == 1);
  for (const auto& [name, q] : desk_polytopes()) {
    LatticeLContext c(q);
    CHECK(c.rank() == q->size() - q->dim() - 1);
    for (const auto& l : c.l_basis()) {
      RatVec img(q->dim() + 1);
      for (std::size_t i = 0; i < q->size(); ++i)
        for (std::size_t j = 0; j < img.size(); ++j) img[j] += l[i] * q->lifted(i)[j];
      CHECK(is_zero(img));
    }
    // from_lstar is a section of to_lstar
    RatVec y(c.rank());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = Rational(static_cast<long>(j) + 2, 7);
    CHECK(c.to_lstar(c.from_lstar(y)) == y);
  }
  // Reeve tetrahedron of height 2: Z^I / Aff has torsion Z/2
  LatticeLContext reeve_ctx(reeve(2));
  CHECK(reeve_ctx.rank() == 0);
  CHECK(reeve_ctx.torsion_order() == 2);
}

TEST_CASE("project to 𝕃*") {
  auto q = segment();
  LatticeLContext ctx(q);
  CHECK(is_zero(project_to_lstar(affine_lift(*q, 1), ctx)));
  // pairing (0,-1,0) with the basis (1,-2,1) gives 2
  CHECK(project_to_lstar(rv({0, -1, 0}), ctx) == rv({2}));
  for (const auto& [name, p] : desk_polytopes()) {
    LatticeLContext c(p);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      RatVec psi = random_lift(rng, p->size());
      CHECK(project_to_lstar(add(psi, affine_lift(*p, trial)), c) == project_to_lstar(psi, c));
    }
  }
}

TEST_CASE("gkz_cone examples") {
  auto q = segment();
  LatticeLContext ctx(q);
  auto fine = gkz_cone(ctx, Paving::from_cells(q, {{0, 1}, {1, 2}}));
  CHECK(fine.tilde_inequalities == std::vector<IntVec>{iv({1, -2, 1})});
  CHECK(fine.i_empty.empty());
  auto coarse = gkz_cone(ctx, Paving::from_cells(q, {{0, 2}}));
  CHECK(coarse.tilde_inequalities == std::vector<IntVec>{iv({-1, 2, -1})});
  CHECK(coarse.i_empty == std::vector<std::size_t>{1});
  CHECK(fine.cone.rays() == std::vector<IntVec>{iv({1})});
  CHECK(coarse.cone.rays() == std::vector<IntVec>{iv({-1})});

  // square a=(0,0), b=(0,1), c=(1,0), d=(1,1): the diagonal ad
  auto sq = square();
  LatticeLContext sctx(sq);
  auto ad = gkz_cone(sctx, Paving::from_cells(sq, {{0, 1, 3}, {0, 2, 3}}));
  CHECK(ad.tilde_inequalities == std::vector<IntVec>{iv({-1, 1, 1, -1})});
  auto bc = gkz_cone(sctx, Paving::from_cells(sq, {{0, 1, 2}, {1, 2, 3}}));
  CHECK(bc.tilde_inequalities == std::vector<IntVec>{iv({1, -1, -1, 1})});

  CHECK_THROWS_AS(gkz_cone(sctx, Paving::from_cells(sq, {{0, 1, 2, 3}})), PreconditionError);
}

TEST_CASE("membership agrees with the geometric conditions") {
  std::mt19937 rng(41);
  for (const auto& [name, q] : desk_polytopes()) {
    LatticeLContext ctx(q);
    auto all = enumerate_regular_triangulations(ctx, EnumerationMethod::Oracle);
    std::vector<GkzChamber> chambers;
    for (const auto& rt : all) chambers.push_back(gkz_cone(ctx, rt.triangulation));
    for (int trial = 0; trial < 500; ++trial) {
      RatVec psi = random_lift(rng, q->size(), trial % 3 ? 3 : 30);
      auto sub = regular_subdivision(q, psi);
      auto hull = brute_lower_hull(*q, psi);
      RatVec shifted = add(psi, affine_lift(*q, trial));
      for (const auto& ch : chambers) {
        bool h = ch.contains_lift(psi);
        CHECK_MESSAGE(h == in_chamber_by_geometry(ch.triangulation, psi), name);
        // the triangulation refines the induced subdivision, its vertices lie on the lower envelope
        // and it uses every vertex of the subdivision
        bool refined = ch.triangulation.refines(sub);
        auto used = ch.triangulation.used_points();
        for (auto v : used) refined = refined && envelope(*q, hull, v) == psi[v];
        for (const auto& cell : sub.cells())
          for (auto v : cell.vertices) refined = refined && std::binary_search(used.begin(), used.end(), v);
        CHECK_MESSAGE(h == refined, name);
        CHECK(ch.contains_lift(shifted) == h);
        CHECK(ch.cone.contains(std::span<const Rational>(ctx.to_lstar(psi))) == h);
      }
    }
  }
}

TEST_CASE("Ψ examples") {
  auto q = segment();
  LatticeLContext ctx(q);
  auto psi = psi_map(ctx);
  CHECK(psi.sigma == std::vector<std::size_t>{0, 1});
  CHECK(psi.values[0] == iv({0, 0, 0}));
  CHECK(psi.values[1] == iv({0, 0, 0}));
  CHECK(psi.values[2] == iv({1, -2, 1}));

  auto sq = square();
  LatticeLContext sctx(sq);
  auto s = psi_map(sctx);
  CHECK(s.sigma == std::vector<std::size_t>{0, 1, 2});
  CHECK(s.values[3] == iv({1, -1, -1, 1}));

  CHECK_THROWS_AS(psi_map(ctx, std::vector<std::size_t>{0, 2}), PreconditionError);
  CHECK_THROWS_AS(psi_map(LatticeLContext(reeve(2))), NoRegularSimplex);
  CHECK(find_regular_simplex(*reeve(1)).has_value());
}

TEST_CASE("Ψ integrality") {
  for (const auto& [name, q] : desk_polytopes()) {
    LatticeLContext ctx(q);
    auto psi = psi_map(ctx);
    for (std::size_t w = 0; w < q->size(); ++w) {
      const auto& v = psi.values[w];
      CHECK(ctx.in_l(v));
      // p(Ψ(ω)) = 0
      for (std::size_t j = 0; j <= q->dim(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < q->size(); ++i) s += v[i] * q->lifted(i)[j];
        CHECK(s == 0);
      }
      // ⟨ψ, Ψ(ω)⟩ = ψ(ω) - L_σ(ψ)(ω) on a random lift
      std::mt19937 rng(static_cast<unsigned>(w));
      RatVec lift = random_lift(rng, q->size());
      std::vector<RatVec> basis;
      for (auto a : psi.sigma) basis.push_back(to_rational(q->lifted(a)));
      auto coords = affine_coordinates(basis, to_rational(q->lifted(w)));
      REQUIRE(coords);
      Rational l_sigma = 0;
      for (std::size_t k = 0; k < psi.sigma.size(); ++k) l_sigma += (*coords)[k] * lift[psi.sigma[k]];
      CHECK(dot(v, lift) == lift[w] - l_sigma);
    }
    for (auto a : psi.sigma) CHECK(is_zero(psi.values[a]));
  }
}

TEST_CASE("enumeration") {
  LatticeLContext seg(segment());
  CHECK(enumerate_regular_triangulations(seg, EnumerationMethod::Oracle).size() == 2);
  CHECK(enumerate_regular_triangulations(seg, EnumerationMethod::Traversal).size() == 2);
  LatticeLContext sq(square());
  CHECK(enumerate_regular_triangulations(sq, EnumerationMethod::Oracle).size() == 2);
  CHECK(enumerate_regular_triangulations(sq, EnumerationMethod::Traversal).size() == 2);
  LatticeLContext s3(segment3());
  CHECK(enumerate_regular_triangulations(s3, EnumerationMethod::Traversal).size() == 4);

  LatticeLContext t(two_simplex2());
  auto oracle = enumerate_regular_triangulations(t, EnumerationMethod::Oracle);
  auto fast = enumerate_regular_triangulations(t, EnumerationMethod::Traversal);
  CHECK(keys(oracle) == keys(fast));
  CHECK(oracle.size() == 14);
  CHECK(enumerate_all_triangulations(two_simplex2()).size() == 14);

  // witnesses are strictly interior
  for (const auto& rt : fast) CHECK(regular_subdivision(two_simplex2(), rt.witness) == rt.triangulation);
  for (const auto& rt : oracle) CHECK(regular_subdivision(two_simplex2(), rt.witness) == rt.triangulation);
}

TEST_CASE("secondary fan of the segment and the square") {
  auto fan = build_secondary_fan(segment());
  REQUIRE(fan.chambers.size() == 2);
  CHECK(fan.chambers[0].cone.rays().size() == 1);
  CHECK(fan.chambers[0].cone.rays()[0] == negate(fan.chambers[1].cone.rays()[0]));
  CHECK(fan.walls.size() == 1);
  CHECK(fan.checks.dimensions);
  CHECK(fan.checks.intersections);
  CHECK(fan.checks.complete);
  CHECK(fan.checks.generic_unique);

  auto sfan = build_secondary_fan(square());
  REQUIRE(sfan.chambers.size() == 2);
  CHECK(sfan.chambers[0].cone.rays()[0] == negate(sfan.chambers[1].cone.rays()[0]));

  CHECK_THROWS_AS(build_secondary_fan(reeve(2)), NoRegularSimplex);
}

TEST_CASE("secondary fan of 2Δ₂") {
  FanOptions opts;
  opts.samples = 1000;
  opts.seed = 7;
  auto fan = build_secondary_fan(two_simplex2(), opts);
  CHECK(fan.ctx.rank() == 3);
  CHECK(fan.chambers.size() == 14);
  CHECK(fan.checks.dimensions);
  CHECK(fan.checks.intersections);
  CHECK(fan.checks.complete);
  CHECK(fan.checks.generic_unique);
  CHECK(fan.checks.samples == 1000);
  // every wall is a facet of both chambers and every codim-2 face has >= 3 chambers
  for (const auto& w : fan.walls) {
    CHECK(w.cone.is_face_of(fan.chambers[w.a].cone));
    CHECK(w.cone.is_face_of(fan.chambers[w.b].cone));
  }
  CHECK(!fan.codim2.empty());
  for (const auto& f : fan.codim2) CHECK(f.chambers.size() >= 3);
  // each chamber of a complete simplicial-dimension fan has at least r facets, all walls
  for (std::size_t i = 0; i < fan.chambers.size(); ++i)
    CHECK(fan.adjacency[i].size() == fan.chambers[i].cone.facets().size());

  auto oracle_fan = build_secondary_fan(two_simplex2(), {EnumerationMethod::Oracle, 50, 3});
  CHECK(oracle_fan.chambers.size() == fan.chambers.size());
}
