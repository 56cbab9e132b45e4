#include "gkz/cli.hpp"

#include <random>

#include "gkz/errors.hpp"
#include "gkz/families.hpp"
#include "gkz/graded.hpp"
#include "gkz/secondary_fan.hpp"
#include "gkz/toric_mori.hpp"
#include "gkz/wall_crossing.hpp"

namespace gkz {

namespace {

Json cone_json(const RationalCone& c) {
  return Json{{"dim", c.dim()},
              {"inequalities", to_json_list(c.facets())},
              {"equations", to_json_list(c.equations())},
              {"rays", to_json_list(c.rays())},
              {"lineality", to_json_list(c.lineality())}};
}

Json graded_json(const LatticePolytope& q, const GradedPoint& a) {
  if (a.is_vector()) return Json{{"degree", 0}, {"vector", to_json(a.vector_part())}};
  return Json{{"degree", to_json(a.degree())}, {"point", to_json(a.point(AmbientLattice::of(q)))}};
}

Json psi_json(const PsiMap& psi) {
  return Json{{"sigma", to_json(psi.sigma)}, {"values", to_json_list(psi.values)},
              {"l_coordinates", to_json_list(psi.l_coords)}};
}

std::size_t samples_or(const JobSpec& job, std::size_t fallback) { return job.samples.value_or(fallback); }

FanOptions fan_options(const JobSpec& job) {
  FanOptions o;
  o.method = job.oracle ? EnumerationMethod::Oracle : EnumerationMethod::Traversal;
  o.samples = samples_or(job, o.samples);
  o.seed = job.seed;
  return o;
}

// A lift strictly inside the chamber plus a random affine function.
RatVec interior_lift(const LatticeLContext& ctx, const GkzChamber& ch, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 9);
  RatVec y(ctx.rank());
  for (const auto& ray : ch.cone.rays()) {
    Rational c = w(rng);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += c * ray[j];
  }
  RatVec psi = ctx.from_lstar(y);
  const auto& q = ctx.polytope();
  RatVec a(q.dim() + 1);
  for (auto& x : a) x = w(rng) - 5;
  for (std::size_t i = 0; i < q.size(); ++i) psi[i] += dot(q.lifted(i), a);
  return psi;
}

std::optional<Paving> input_paving(const Json& input, const PolytopePtr& q) {
  if (!input.contains("cells")) return std::nullopt;
  return parse_paving(input, q);
}

std::vector<std::size_t> selected_chambers(const SecondaryFan& fan, const Json& input) {
  std::vector<std::size_t> out;
  if (auto p = input_paving(input, fan.ctx.polytope_ptr())) {
    auto idx = fan.chamber_index(*p);
    if (!idx) throw SchemaError("cells: not a coherent triangulation of the input polytope");
    out.push_back(*idx);
  } else {
    for (std::size_t i = 0; i < fan.chambers.size(); ++i) out.push_back(i);
  }
  return out;
}

Json cmd_points(const PolytopePtr& q) {
  return Json{{"dim", q->dim()},
              {"vertices", to_json_list(q->vertices())},
              {"count", q->size()},
              {"points", to_json_list(q->points())},
              {"normalized_volume", to_json(q->normalized_volume())}};
}

Json cmd_triangulations(const JobSpec& job, const PolytopePtr& q) {
  LatticeLContext ctx(q);
  auto method = job.oracle ? EnumerationMethod::Oracle : EnumerationMethod::Traversal;
  Json list = Json::array();
  for (const auto& rt : enumerate_regular_triangulations(ctx, method)) {
    Json t = to_json(rt.triangulation);
    t["key"] = rt.triangulation.key();
    t["i_empty"] = to_json(rt.triangulation.empty_points());
    t["witness"] = to_json(rt.witness);
    list.push_back(std::move(t));
  }
  Json out{{"method", job.oracle ? "oracle" : "traversal"}, {"count", list.size()}, {"triangulations", list}};
  if (job.oracle) out["all_triangulations"] = enumerate_all_triangulations(q).size();
  return out;
}

Json cmd_fan(const JobSpec& job, const PolytopePtr& q) {
  auto fan = build_secondary_fan(q, fan_options(job));
  const auto& ctx = fan.ctx;
  Json chambers = Json::array();
  for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
    const auto& ch = fan.chambers[i];
    Json c = to_json(ch.triangulation);
    c["index"] = i;
    c["i_empty"] = to_json(ch.i_empty);
    c["cone"] = cone_json(ch.cone);
    chambers.push_back(std::move(c));
  }
  Json walls = Json::array();
  for (const auto& w : fan.walls) walls.push_back(Json{{"chambers", {w.a, w.b}}, {"cone", cone_json(w.cone)}});
  Json codim2 = Json::array();
  for (const auto& f : fan.codim2) codim2.push_back(Json{{"chambers", to_json(f.chambers)}, {"cone", cone_json(f.cone)}});
  Json adjacency = Json::array();
  for (const auto& a : fan.adjacency) adjacency.push_back(to_json(a));
  return Json{{"method", job.oracle ? "oracle" : "traversal"},
              {"rank", ctx.rank()},
              {"torsion_order", to_json(ctx.torsion_order())},
              {"l_basis", to_json_list(ctx.l_basis())},
              {"psi", psi_json(fan.psi)},
              {"chambers", chambers},
              {"walls", walls},
              {"adjacency", adjacency},
              {"codim2", codim2},
              {"checks",
               {{"dimensions", fan.checks.dimensions},
                {"intersections", fan.checks.intersections},
                {"complete", fan.checks.complete},
                {"generic_unique", fan.checks.generic_unique},
                {"samples", fan.checks.samples}}}};
}

// Own-chamber acceptances and other-chamber rejections over seeded lifts.
Json mori_verdicts(const SecondaryFan& fan, std::size_t i, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed + i);
  std::size_t own = 0, rejected = 0, others = 0;
  const std::size_t nc = fan.chambers.size();
  for (std::size_t k = 0; k < samples; ++k) {
    auto d = interior_lift(fan.ctx, fan.chambers[i], rng);
    if (mori_chamber_check(fan.ctx, fan.chambers[i].triangulation, d)) ++own;
    std::size_t other = (i + 1 + k) % nc;
    if (other == i) continue;
    ++others;
    auto e = interior_lift(fan.ctx, fan.chambers[other], rng);
    if (!mori_chamber_check(fan.ctx, fan.chambers[i].triangulation, e)) ++rejected;
  }
  return Json{{"samples", samples},
              {"accepted", own},
              {"other_samples", others},
              {"rejected", rejected},
              {"pass", own == samples && rejected == others}};
}

Json cmd_chamber(const JobSpec& job, const PolytopePtr& q, const Json& input) {
  auto fan = build_secondary_fan(q, fan_options(job));
  Json list = Json::array();
  for (auto i : selected_chambers(fan, input)) {
    const auto& ch = fan.chambers[i];
    auto fd = build_fan_data(fan.ctx, ch.triangulation);
    Json c = to_json(ch.triangulation);
    c["index"] = i;
    c["i_empty"] = to_json(ch.i_empty);
    c["tilde_inequalities"] = to_json_list(ch.tilde_inequalities);
    c["cone"] = cone_json(ch.cone);
    c["nef_cone"] = cone_json(nef_cone(fd));
    c["eff_curve_generators"] = to_json_list(eff_curve_generators(fd));
    c["relative_minimal"] = is_relative_minimal(fd);
    Json cg{{"rank", fd.class_group.rank}, {"torsion", to_json_list(fd.class_group.torsion)}};
    c["class_group"] = cg;
    Json curves = Json::array();
    for (const auto& w : ch.triangulation.interior_walls()) {
      auto cc = wall_curve_class(fd, w);
      curves.push_back(Json{{"wall", to_json(w.vertices)},
                            {"sides", {w.minus, w.plus}},
                            {"class", to_json(cc.covector)},
                            {"class_l", to_json(fan.ctx.l_coordinates(cc.covector))},
                            {"mult_wall", to_json(cc.mult_wall)},
                            {"mult_minus", to_json(cc.mult_minus)},
                            {"mult_plus", to_json(cc.mult_plus)}});
    }
    c["wall_curves"] = curves;
    c["mori_check"] = mori_verdicts(fan, i, samples_or(job, 20), job.seed);
    list.push_back(std::move(c));
  }
  return Json{{"rank", fan.ctx.rank()}, {"chambers", list}};
}

Json wall_json(const LatticeLContext& ctx, const WallCrossing& wc) {
  Json w{{"kind", wc.kind == WallKind::Divisorial ? "divisorial" : "flipping"},
         {"first", to_json(wc.t1)},
         {"second", to_json(wc.t2)}};
  if (wc.kind == WallKind::Divisorial) {
    w["omega"] = wc.omega;
    w["sigma0"] = to_json(wc.sigma0);
    w["a"] = to_json(wc.a);
    w["first_is_fine"] = wc.first_is_fine;
    w["star_verified"] = wc.star_verified;
  } else {
    w["circuit"] = to_json(wc.circuit);
    w["j_minus"] = to_json(wc.j_minus);
    w["j_plus"] = to_json(wc.j_plus);
    w["b"] = to_json(wc.b);
    if (wc.flip_wall) w["flip_wall"] = to_json(wc.flip_wall->vertices);
    w["k"] = wc.k;
    w["l"] = wc.l;
    w["mult_sigma_k"] = to_json(wc.mult_sigma_k);
    w["mult_sigma_l"] = to_json(wc.mult_sigma_l);
    w["mult_wall"] = to_json(wc.mult_wall);
    w["multiplier"] = to_json(wc.multiplier);
    w["multiplier_formula"] = to_json(wc.multiplier_formula);
  }
  w["omega_point"] = to_json(wc.omega_point);
  w["q_tau"] = to_json(wc.q_tau);
  w["q_tau_l"] = to_json(wc.q_tau_l);
  w["q_tau_primitive"] = to_json(wc.q_tau_primitive);
  w["q_tau_scale"] = to_json(wc.q_tau_scale);
  w["sign"] = wc.sign;
  w["lineality_ok"] = wc.lineality_ok;
  w["wall_paving"] = to_json(wc.wall_paving);
  auto tau = tau_context(ctx, wc.t1, wc.t2);
  w["tau"] = Json{{"index_first", to_json(tau.index1)},
                  {"index_second", to_json(tau.index2)},
                  {"l_tau", to_json_list(tau.l_tau)},
                  {"units", to_json_list(tau.units)}};
  return w;
}

Json cmd_wall(const JobSpec& job, const PolytopePtr& q) {
  auto fan = build_secondary_fan(q, fan_options(job));
  Json list = Json::array();
  for (const auto& fw : fan.walls) {
    auto wc = classify_wall(fan.ctx, fan.chambers[fw.a].triangulation, fan.chambers[fw.b].triangulation, fan.psi);
    Json w = wall_json(fan.ctx, wc);
    w["chambers"] = {fw.a, fw.b};
    list.push_back(std::move(w));
  }
  return Json{{"psi", psi_json(fan.psi)}, {"walls", list}};
}

Json cmd_mori_check(const JobSpec& job, const PolytopePtr& q, const Json& input) {
  auto fan = build_secondary_fan(q, fan_options(job));
  Json list = Json::array();
  bool all = true;
  for (auto i : selected_chambers(fan, input)) {
    Json v = mori_verdicts(fan, i, samples_or(job, 20), job.seed);
    all = all && v["pass"].get<bool>();
    v["index"] = i;
    v["cells"] = to_json(fan.chambers[i].triangulation)["cells"];
    list.push_back(std::move(v));
  }
  auto mc = moving_cone(fan);
  return Json{{"chambers", list},
              {"all_pass", all},
              {"moving_cone", {{"cone", cone_json(mc.cone)}, {"chambers", to_json(mc.chambers)}, {"convex", mc.convex}}}};
}

Json specialization_json(const TwistedMonoid& tm, const IntVec& v) {
  auto sp = specialize(tm, v);
  return Json{{"valuation", to_json(v)},
              {"central_fiber", to_json(sp.central_fiber)},
              {"bending", to_json_list(sp.bending)}};
}

Json cmd_family(const JobSpec& job, const PolytopePtr& q, const Json& input) {
  if (job.truncation < 1) throw SchemaError("truncation: expected a positive integer");
  LatticeLContext ctx(q);
  Paving p;
  if (auto given = input_paving(input, q)) {
    p = *given;
  } else {
    auto ts = enumerate_regular_triangulations(ctx, job.oracle ? EnumerationMethod::Oracle : EnumerationMethod::Traversal);
    p = ts.front().triangulation;
  }
  auto hp = build_hp(q, p, job.truncation);
  auto phi = universal_phi(hp);
  TwistedMonoid tm(q, phi, hp_monoid(hp), job.truncation);

  Json basis = Json::array();
  for (const auto& a : tm.elements()) {
    Json e = graded_json(*q, a);
    e["phi_tilde"] = to_json(tm.phi_tilde(a));
    basis.push_back(std::move(e));
  }
  Json constants = Json::array();
  const auto& els = tm.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = i; j < els.size(); ++j) {
      if (els[i].degree() + els[j].degree() > job.truncation) continue;
      auto prod = theta_multiply(tm, els[i], els[j]);
      constants.push_back(Json{{"factors", {i, j}},
                               {"gamma", graded_json(*q, prod.gamma)},
                               {"correction", to_json(prod.correction)}});
    }

  Json spec = Json::array();
  spec.push_back(specialization_json(tm, IntVec(hp.rank)));
  for (const auto& ray : hp.convex_cone.rays()) spec.push_back(specialization_json(tm, ray));
  if (hp.convex_cone.rays().size() > 1 && hp.convex_cone.is_pointed())
    spec.push_back(specialization_json(tm, hp.convex_cone.relative_interior_point()));

  Json out = to_json(p);
  out["truncation"] = job.truncation;
  out["h_rank"] = hp.rank;
  out["h_generators"] = to_json_list(hp.generators);
  out["h_sat_hilbert"] = to_json_list(hp.hsat_hilbert);
  out["convex_cone_dual_hilbert"] = to_json_list(hp.cpz_dual_hilbert);
  out["saturation_equal"] = hp.saturation_equal;
  out["sharp"] = hp.sharp;
  out["bending"] = to_json_list(universal_bending(hp));
  out["p_convex"] = tm.is_p_convex();
  out["corrections_in_p"] = tm.corrections_in_p();
  out["theta_basis"] = basis;
  out["structure_constants"] = constants;

  if (p.is_triangulation()) {
    try {
      auto psi = psi_map(ctx);
      auto ts = theta_section(ctx, p, psi);
      out["stability"] = Json{{"exponents", to_json_list(ts.exponents)},
                              {"unit", ts.unit},
                              {"used", to_json(ts.used)},
                              {"flags_match_used", ts.flags_match_used},
                              {"in_l_t", ts.in_l_t},
                              {"above", ts.above},
                              {"stable", ts.stable}};
    } catch (const NoRegularSimplex&) {
      out["stability"] = nullptr;
    }
  } else {
    out["stability"] = nullptr;
  }
  out["specializations"] = spec;
  return out;
}

Json cmd_cocycle(const JobSpec& job, const PolytopePtr& q) {
  auto fan = build_secondary_fan(q, fan_options(job));
  const auto samples = half_points(*q);
  Json faces = Json::array();
  std::size_t triples = 0, passed = 0;
  for (const auto& f : fan.codim2) {
    const auto& cs = f.chambers;
    std::size_t ft = 0, fp = 0;
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t b = 0; b < cs.size(); ++b)
        for (std::size_t c = 0; c < cs.size(); ++c) {
          if (a == b || b == c || a == c) continue;
          ++ft;
          if (cocycle_check(fan.chambers[cs[a]].triangulation, fan.chambers[cs[b]].triangulation,
                            fan.chambers[cs[c]].triangulation, fan.psi, samples))
            ++fp;
        }
    triples += ft;
    passed += fp;
    faces.push_back(Json{{"chambers", to_json(cs)}, {"triples", ft}, {"passed", fp}});
  }
  std::size_t pairs = 0, antisymmetric = 0;
  for (std::size_t a = 0; a < fan.chambers.size(); ++a)
    for (std::size_t b = a + 1; b < fan.chambers.size(); ++b) {
      ++pairs;
      auto d12 = g12(fan.chambers[a].triangulation, fan.chambers[b].triangulation, fan.psi);
      auto d21 = g12(fan.chambers[b].triangulation, fan.chambers[a].triangulation, fan.psi);
      bool ok = true;
      for (const auto& x : samples) ok = ok && is_zero(add(d12.evaluate(x), d21.evaluate(x)));
      if (ok) ++antisymmetric;
    }
  return Json{{"sample_points", samples.size()},
              {"faces", faces},
              {"triples", triples},
              {"passed", passed},
              {"pairs", pairs},
              {"antisymmetric", antisymmetric},
              {"pass", passed == triples && antisymmetric == pairs}};
}

}  // namespace

const std::vector<std::string>& cli_commands() {
  static const std::vector<std::string> cmds{"points",     "triangulations", "fan",    "chamber",
                                             "wall",       "mori-check",     "family", "cocycle-check"};
  return cmds;
}

JobResult run_job(const JobSpec& job, const Json& input) {
  JobResult r;
  try {
    auto q = parse_polytope(input);
    Json body;
    const auto& c = job.command;
    if (c == "points") body = cmd_points(q);
    else if (c == "triangulations") body = cmd_triangulations(job, q);
    else if (c == "fan") body = cmd_fan(job, q);
    else if (c == "chamber") body = cmd_chamber(job, q, input);
    else if (c == "wall") body = cmd_wall(job, q);
    else if (c == "mori-check") body = cmd_mori_check(job, q, input);
    else if (c == "family") body = cmd_family(job, q, input);
    else if (c == "cocycle-check") body = cmd_cocycle(job, q);
    else throw SchemaError("unknown command '" + c + "'");
    r.report = Json{{"command", c}};
    r.report.update(body);
  } catch (const SchemaError& e) {
    r.exit_code = ExitSchema;
    r.error = e.what();
  } catch (const NoRegularSimplex& e) {
    r.exit_code = ExitNoRegularSimplex;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.exit_code = ExitFailure;
    r.error = e.what();
  }
  return r;
}

JobResult run_job(const JobSpec& job) {
  try {
    return run_job(job, read_json_file(job.input));
  } catch (const SchemaError& e) {
    JobResult r;
    r.exit_code = ExitSchema;
    r.error = e.what();
    return r;
  }
}

}  // namespace gkz
