#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkz/errors.hpp"
#include "gkz/lattice.hpp"
#include "gkz/toric_mori.hpp"
#include "support.hpp"

using namespace gkz;
using namespace testing;

namespace {

// Strictly interior lift of a chamber: positive combination of all rays.
RatVec interior_lift(const LatticeLContext& ctx, const GkzChamber& ch, std::mt19937& rng) {
  std::uniform_int_distribution<int> w(1, 9);
  RatVec y(ctx.rank());
  for (const auto& ray : ch.cone.rays()) {
    Rational c = w(rng);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += c * ray[j];
  }
  RatVec psi = ctx.from_lstar(y);
  // add an affine function
  const auto& q = ctx.polytope();
  RatVec a(q.dim() + 1);
  for (auto& x : a) x = w(rng) - 5;
  for (std::size_t i = 0; i < q.size(); ++i) psi[i] += dot(q.lifted(i), a);
  return psi;
}

RatVec bending_in_l(const LatticeLContext& ctx, const BendingData& b) { return ctx.l_coordinates(b.p); }

}  // namespace

TEST_CASE("fan data examples") {
  auto q = segment();
  LatticeLContext ctx(q);
  auto coarse = build_fan_data(ctx, Paving::from_cells(q, {{0, 2}}));
  REQUIRE(coarse.cones.size() == 1);
  CHECK(coarse.cones[0].rays() == std::vector<IntVec>{iv({0, 1}), iv({2, 1})});
  CHECK(coarse.pa_basis.size() == 2);
  CHECK(coarse.pa_basis == ctx.aff_basis());
  CHECK(coarse.rays == std::vector<std::size_t>{0, 2});
  CHECK(coarse.class_group.rank == 0);
  CHECK(coarse.class_group.torsion == std::vector<Integer>{2});

  auto fine = build_fan_data(ctx, Paving::from_cells(q, {{0, 1}, {1, 2}}));
  CHECK(fine.cones.size() == 2);
  CHECK(fine.pa_basis.size() == 3);
  CHECK(fine.pa_index == 1);
  CHECK(sublattice_index(std::vector<IntVec>{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}, fine.pa_basis) == 1);
  CHECK(fine.class_group.rank == 1);
  CHECK(fine.class_group.torsion.empty());

  auto sq = square();
  LatticeLContext sctx(sq);
  auto diag = build_fan_data(sctx, Paving::from_cells(sq, {{0, 1, 2}, {1, 2, 3}}));
  CHECK(diag.pa_basis.size() == 4);
  CHECK(diag.rays.size() == 4);
}

TEST_CASE("fan cones meet in faces") {
  for (const auto& [name, q] : desk_polytopes()) {
    LatticeLContext ctx(q);
    for (const auto& rt : enumerate_regular_triangulations(ctx)) {
      auto fd = build_fan_data(ctx, rt.triangulation);
      for (std::size_t i = 0; i < fd.cones.size(); ++i)
        for (std::size_t j = i + 1; j < fd.cones.size(); ++j) {
          auto c = fd.cones[i].intersect(fd.cones[j]);
          CHECK(c.is_face_of(fd.cones[i]));
          CHECK(c.is_face_of(fd.cones[j]));
        }
      // rays biject with the used points
      CHECK(fd.rays == rt.triangulation.used_points());
    }
  }
}

TEST_CASE("nef and effective curve cones") {
  auto q = segment();
  LatticeLContext ctx(q);
  auto fine = build_fan_data(ctx, Paving::from_cells(q, {{0, 1}, {1, 2}}));
  CHECK(nef_cone(fine).rays() == std::vector<IntVec>{iv({1})});
  CHECK(ctx.to_lstar(rv({0, 0, 1})) == rv({1}));
  CHECK(eff_curve_cone(fine).rays() == std::vector<IntVec>{iv({1})});
  CHECK(ctx.from_l_coordinates(rv({1})) == rv({1, -2, 1}));
  CHECK(eff_curve_generators(fine) == std::vector<RatVec>{rv({1})});

  auto coarse = build_fan_data(ctx, Paving::from_cells(q, {{0, 2}}));
  CHECK(nef_cone(coarse) == RationalCone::origin(1));
  CHECK(eff_curve_cone(coarse) == RationalCone::full_space(1));

  auto sq = square();
  LatticeLContext sctx(sq);
  CHECK(sctx.l_basis() == std::vector<IntVec>{iv({1, -1, -1, 1})});
  auto bc = build_fan_data(sctx, Paving::from_cells(sq, {{0, 1, 2}, {1, 2, 3}}));
  CHECK(nef_cone(bc).rays() == std::vector<IntVec>{iv({1})});
  CHECK(eff_curve_cone(bc).rays() == std::vector<IntVec>{iv({1})});
  auto ad = build_fan_data(sctx, Paving::from_cells(sq, {{0, 1, 3}, {0, 2, 3}}));
  CHECK(nef_cone(ad).rays() == std::vector<IntVec>{iv({-1})});
}

TEST_CASE("nef cone against the GKZ chamber") {
  for (const auto& [name, q] : desk_polytopes()) {
    LatticeLContext ctx(q);
    for (const auto& rt : enumerate_regular_triangulations(ctx)) {
      auto ch = gkz_cone(ctx, rt.triangulation);
      auto fd = build_fan_data(ctx, rt.triangulation);
      auto nef = nef_cone(fd);
      std::vector<IntVec> extra;
      for (auto w : ch.i_empty) {
        RatVec e(q->size());
        e[w] = 1;
        extra.push_back(as_integers(ctx.to_lstar(e)));
      }
      auto orthant = RationalCone::from_generators(ctx.rank(), extra);
      CHECK_MESSAGE(nef.minkowski_sum(orthant) == ch.cone, name);
      CHECK(nef.is_face_of(ch.cone));
      // effective curves are dual to nef, and bending of g_{Ψ,𝒯} lies in them
      auto eff = eff_curve_cone(fd);
      CHECK(eff.dual() == nef);
      auto psi = psi_map(ctx);
      std::vector<RatVec> vals;
      for (const auto& v : psi.values) vals.push_back(to_rational(v));
      auto g = interpolate(rt.triangulation, vals);
      for (const auto& b : bending_parameters(g)) {
        auto lc = bending_in_l(ctx, b);
        CHECK(eff.contains(std::span<const Rational>(lc)));
      }
    }
  }
}

TEST_CASE("wall curve classes") {
  auto q = segment();
  LatticeLContext ctx(q);
  auto fine = build_fan_data(ctx, Paving::from_cells(q, {{0, 1}, {1, 2}}));
  auto cc = wall_curve_class(fine, fine.paving.interior_walls()[0]);
  CHECK(cc.covector == rv({1, -2, 1}));
  CHECK(cc.mult_wall == 1);
  CHECK(cc.mult_plus == 1);
  CHECK(cc.mult_minus == 1);

  auto sq = square();
  LatticeLContext sctx(sq);
  auto bc = build_fan_data(sctx, Paving::from_cells(sq, {{0, 1, 2}, {1, 2, 3}}));
  CHECK(wall_curve_class(bc, bc.paving.interior_walls()[0]).covector == rv({1, -1, -1, 1}));

  // non-unimodular cells of 2Δ₂: (0,0),(0,1),(2,0) and (0,1),(0,2),(2,0)
  auto t = two_simplex2();
  LatticeLContext tctx(t);
  auto big = build_fan_data(tctx, Paving::from_cells(t, {{0, 1, 5}, {1, 2, 5}}));
  auto bcc = wall_curve_class(big, big.paving.interior_walls()[0]);
  CHECK(bcc.mult_wall == 1);
  CHECK(bcc.mult_plus == 2);
  CHECK(bcc.mult_minus == 2);
  CHECK(tctx.in_l(as_integers(scale(bcc.covector, Rational(2)))));
}

TEST_CASE("bending of g_{Ψ,𝒯} equals the wall curve class") {
  for (const auto& [name, q] : desk_polytopes()) {
    LatticeLContext ctx(q);
    auto psi = psi_map(ctx);
    std::vector<RatVec> vals;
    for (const auto& v : psi.values) vals.push_back(to_rational(v));
    for (const auto& rt : enumerate_regular_triangulations(ctx)) {
      auto fd = build_fan_data(ctx, rt.triangulation);
      auto g = interpolate(rt.triangulation, vals);
      for (const auto& b : bending_parameters(g)) CHECK_MESSAGE(b.p == wall_curve_class(fd, b.wall).covector, name);
    }
  }
}

TEST_CASE("relative minimal models") {
  auto q = segment();
  LatticeLContext ctx(q);
  CHECK(is_relative_minimal(build_fan_data(ctx, Paving::from_cells(q, {{0, 1}, {1, 2}}))));
  CHECK_FALSE(is_relative_minimal(build_fan_data(ctx, Paving::from_cells(q, {{0, 2}}))));
  auto sq = square();
  LatticeLContext sctx(sq);
  CHECK(is_relative_minimal(build_fan_data(sctx, Paving::from_cells(sq, {{0, 1, 2}, {1, 2, 3}}))));
  CHECK(is_relative_minimal(build_fan_data(sctx, Paving::from_cells(sq, {{0, 1, 3}, {0, 2, 3}}))));

  for (const auto& [name, p] : desk_polytopes()) {
    LatticeLContext c(p);
    for (const auto& rt : enumerate_regular_triangulations(c)) {
      auto fd = build_fan_data(c, rt.triangulation);
      if (is_relative_minimal(fd)) CHECK(fd.class_group.rank == c.rank());
      CHECK(fd.class_group.rank == fd.rays.size() - p->dim() - 1);
    }
  }
}

TEST_CASE("Mori chamber check examples") {
  auto q = segment();
  LatticeLContext ctx(q);
  auto fine = Paving::from_cells(q, {{0, 1}, {1, 2}});
  CHECK(mori_chamber_check(ctx, fine, rv({0, -1, 0})));
  CHECK_FALSE(mori_chamber_check(ctx, fine, rv({0, 1, 0})));
  CHECK_THROWS_AS(mori_chamber_check(ctx, fine, rv({3, 4, 5})), NotInterior);

  // P_D for the fine chamber has one vertex per maximal cell
  CHECK(p_d_vertices(*q, rv({0, -1, 0}), {0, 1, 2}).size() == 2);
  CHECK(p_d_vertices(*q, rv({0, 1, 0}), {0, 1, 2}).size() == 1);
}

TEST_CASE("Mori fan equals the secondary fan") {
  for (const auto& [name, q] : desk_polytopes()) {
    auto fan = build_secondary_fan(q);
    std::mt19937 rng(53);
    for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
      for (int k = 0; k < 20; ++k) {
        auto d = interior_lift(fan.ctx, fan.chambers[i], rng);
        CHECK_MESSAGE(mori_chamber_check(fan.ctx, fan.chambers[i].triangulation, d), name);
        std::size_t other = (i + 1 + static_cast<std::size_t>(k)) % fan.chambers.size();
        if (other == i) continue;
        auto e = interior_lift(fan.ctx, fan.chambers[other], rng);
        CHECK_FALSE(mori_chamber_check(fan.ctx, fan.chambers[i].triangulation, e));
      }
    }
  }
}

TEST_CASE("moving cone") {
  auto seg = build_secondary_fan(segment());
  auto m = moving_cone(seg);
  CHECK(m.chambers.size() == 1);
  CHECK(m.cone == seg.chambers[m.chambers[0]].cone);
  CHECK(m.cone.rays() == std::vector<IntVec>{iv({1})});
  CHECK(m.convex);

  auto sq = build_secondary_fan(square());
  auto ms = moving_cone(sq);
  CHECK(ms.chambers.size() == 2);
  CHECK(ms.cone == RationalCone::full_space(1));
  CHECK(ms.convex);

  auto t = build_secondary_fan(two_simplex2());
  auto mt = moving_cone(t);
  CHECK(mt.convex);
  CHECK(mt.cone.dim() == 3);
  for (auto i : mt.chambers) CHECK(mt.cone.contains(t.chambers[i].cone));
}
