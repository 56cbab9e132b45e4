#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

#include "gkz/cli.hpp"
#include "gkz/errors.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

const char* kSegment = R"({"dim": 1, "vertices": [[0], [2]]})";
const char* kSquare = R"({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]})";
const char* kTwoSimplex = R"({"dim": 2, "vertices": [[0, 0], [2, 0], [0, 2]]})";
const char* kReeve = R"({"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 3]]})";

fs::path write_input(const std::string& name, const std::string& text) {
  auto dir = fs::temp_directory_path() / "gkz_cli_test";
  fs::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

JobResult run(const std::string& cmd, const std::string& text, std::uint64_t seed = 1) {
  JobSpec job;
  job.command = cmd;
  job.seed = seed;
  return run_job(job, parse_json_text(text));
}

int run_binary(const std::string& args) {
  std::string line = std::string(GKZ_BINARY) + " " + args + " >/dev/null 2>&1";
  int status = std::system(line.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

// Every string in a report is either a rational "num/den" or one of the
// labelled text fields.
void check_rationals(const Json& j, const std::string& key, std::size_t& count) {
  static const std::regex frac("-?[0-9]+/[1-9][0-9]*");
  if (j.is_string()) {
    if (key == "command" || key == "method" || key == "kind" || key == "key") return;
    CHECK_MESSAGE(std::regex_match(j.get<std::string>(), frac), key);
    ++count;
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) check_rationals(it.value(), it.key(), count);
  } else if (j.is_array()) {
    for (const auto& x : j) check_rationals(x, key, count);
  }
}

void collect_pavings(const Json& j, std::vector<Json>& out) {
  if (j.is_object()) {
    if (j.contains("cells") && j["cells"].is_array()) out.push_back(Json{{"cells", j["cells"]}});
    for (auto it = j.begin(); it != j.end(); ++it) collect_pavings(it.value(), out);
  } else if (j.is_array()) {
    for (const auto& x : j) collect_pavings(x, out);
  }
}

}  // namespace

TEST_CASE("fan on the segment") {
  auto r = run("fan", kSegment);
  REQUIRE(r.exit_code == ExitOk);
  CHECK(r.report["chambers"].size() == 2);
  CHECK(r.report["walls"].size() == 1);
  CHECK(r.report["torsion_order"] == 1);
  CHECK(r.report["rank"] == 1);
  // two opposite rays
  auto a = r.report["chambers"][0]["cone"]["rays"][0][0].get<long>();
  auto b = r.report["chambers"][1]["cone"]["rays"][0][0].get<long>();
  CHECK(a == -b);
}

TEST_CASE("wall on the square") {
  auto r = run("wall", kSquare);
  REQUIRE(r.exit_code == ExitOk);
  REQUIRE(r.report["walls"].size() == 1);
  const auto& w = r.report["walls"][0];
  CHECK(w["kind"] == "flipping");
  std::multiset<std::string> b;
  for (const auto& x : w["b"]) b.insert(x.get<std::string>());
  CHECK(b == std::multiset<std::string>{"-1/2", "-1/2", "1/2", "1/2"});
  CHECK(w["j_minus"].size() == 2);
  CHECK(w["j_plus"].size() == 2);
  CHECK(w["multiplier"] == w["multiplier_formula"]);
}

TEST_CASE("wall on the segment is divisorial") {
  auto r = run("wall", kSegment);
  REQUIRE(r.exit_code == ExitOk);
  const auto& w = r.report["walls"][0];
  CHECK(w["kind"] == "divisorial");
  CHECK(w["omega"] == 1);
  CHECK(w["a"] == Json::parse(R"(["1/2", "1/2"])"));
}

TEST_CASE("exit codes") {
  auto empty = write_input("empty.json", "");
  auto blank = write_input("blank.json", "  \n");
  auto bad = write_input("bad.json", R"({"dim": 1, "vertices": [[0], [2])");
  auto seg = write_input("segment.json", kSegment);
  auto reeve = write_input("reeve.json", kReeve);

  JobSpec job;
  job.command = "points";
  job.input = empty.string();
  CHECK(run_job(job).exit_code == ExitSchema);
  job.input = blank.string();
  CHECK(run_job(job).exit_code == ExitSchema);
  job.input = bad.string();
  auto r = run_job(job);
  CHECK(r.exit_code == ExitSchema);
  CHECK(r.error.find("byte 33") != std::string::npos);
  job.input = (fs::temp_directory_path() / "gkz_cli_test" / "missing.json").string();
  CHECK(run_job(job).exit_code == ExitSchema);

  CHECK(run_binary("points --input " + empty.string()) == 3);
  CHECK(run_binary("points --input " + bad.string()) == 3);
  CHECK(run_binary("points --input " + seg.string()) == 0);
  CHECK(run_binary("fan --input " + reeve.string()) == 2);
  CHECK(run_binary("nonsense --input " + seg.string()) == 3);
  CHECK(run_binary("points") == 3);
}

TEST_CASE("schema errors") {
  const char* bad[] = {
      R"([1, 2])",
      R"({"vertices": [[0], [2]]})",
      R"({"dim": 1})",
      R"({"dim": 0, "vertices": [[0]]})",
      R"({"dim": 1, "vertices": []})",
      R"({"dim": 2, "vertices": [[0, 0], [1]]})",
      R"({"dim": 1, "vertices": [[0.5], [2]]})",
      R"({"dim": 1, "vertices": [["x"], [2]]})",
      R"({"dim": 2, "vertices": [[0, 0], [1, 1], [2, 2]]})",
  };
  for (const char* t : bad) CHECK_MESSAGE(run("points", t).exit_code == ExitSchema, t);

  // integers as strings, including large ones
  auto big = run("points", R"({"dim": 1, "vertices": [["100000000000000000000"], ["100000000000000000001"]]})");
  REQUIRE(big.exit_code == ExitOk);
  CHECK(big.report["points"][0][0] == "100000000000000000000");

  const char* bad_cells[] = {
      R"({"dim": 1, "vertices": [[0], [2]], "cells": [[0, 1]]})",
      R"({"dim": 1, "vertices": [[0], [2]], "cells": [[0, 1], [0, 2]]})",
      R"({"dim": 1, "vertices": [[0], [2]], "cells": [[0, 7]]})",
      R"({"dim": 1, "vertices": [[0], [2]], "cells": "x"})",
  };
  for (const char* t : bad_cells) CHECK_MESSAGE(run("chamber", t).exit_code == ExitSchema, t);
  auto ok = run("chamber", R"({"dim": 1, "vertices": [[0], [2]], "cells": [[0, 1], [1, 2]]})");
  REQUIRE(ok.exit_code == ExitOk);
  CHECK(ok.report["chambers"].size() == 1);
  CHECK(ok.report["chambers"][0]["relative_minimal"] == true);
  CHECK(run("nonsense", kSegment).exit_code == ExitSchema);
}

TEST_CASE("no regular simplex") {
  for (const auto& c : {"fan", "wall", "cocycle-check", "chamber", "mori-check"})
    CHECK_MESSAGE(run(c, kReeve).exit_code == ExitNoRegularSimplex, c);
  CHECK(run("points", kReeve).exit_code == ExitOk);
  CHECK(run("triangulations", kReeve).exit_code == ExitOk);
}

TEST_CASE("determinism, rational format and paving round trip") {
  for (const char* text : {kSegment, kSquare, kTwoSimplex}) {
    auto q = parse_polytope(parse_json_text(text));
    for (const auto& c : cli_commands()) {
      auto a = run(c, text, 7);
      auto b = run(c, text, 7);
      REQUIRE_MESSAGE(a.exit_code == ExitOk, c);
      CHECK_MESSAGE(a.report.dump(2) == b.report.dump(2), c);
      std::size_t count = 0;
      check_rationals(a.report, "", count);

      std::vector<Json> pavings;
      collect_pavings(a.report, pavings);
      for (const auto& pj : pavings) {
        auto reparsed = parse_paving(Json::parse(pj.dump()), q);
        CHECK(to_json(reparsed) == pj);
      }
      if (c == "fan" || c == "wall" || c == "triangulations" || c == "family") CHECK(!pavings.empty());
    }
  }
}

TEST_CASE("binary output is byte-identical") {
  auto sq = write_input("square.json", kSquare);
  auto dir = fs::temp_directory_path() / "gkz_cli_test";
  for (const auto& c : cli_commands()) {
    auto o1 = dir / (c + "_1.json"), o2 = dir / (c + "_2.json");
    std::string base = std::string(GKZ_BINARY) + " " + c + " --input " + sq.string() + " --seed 5 --samples 7 > ";
    REQUIRE(std::system((base + o1.string()).c_str()) == 0);
    REQUIRE(std::system((base + o2.string()).c_str()) == 0);
    std::ifstream f1(o1, std::ios::binary), f2(o2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), {}), s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(!s1.empty());
    CHECK_MESSAGE(s1 == s2, c);
  }
}

TEST_CASE("oracle and traversal agree") {
  for (const char* text : {kSegment, kSquare, kTwoSimplex}) {
    JobSpec job;
    job.command = "triangulations";
    auto t = run_job(job, parse_json_text(text));
    job.oracle = true;
    auto o = run_job(job, parse_json_text(text));
    REQUIRE(t.exit_code == ExitOk);
    REQUIRE(o.exit_code == ExitOk);
    std::vector<std::string> kt, ko;
    for (const auto& x : t.report["triangulations"]) kt.push_back(x["key"]);
    for (const auto& x : o.report["triangulations"]) ko.push_back(x["key"]);
    CHECK(kt == ko);
    CHECK(o.report["all_triangulations"].get<std::size_t>() >= ko.size());
  }
  auto r = run("triangulations", kTwoSimplex);
  CHECK(r.report["count"] == 14);
}

TEST_CASE("checks reported by the other commands") {
  auto m = run("mori-check", kTwoSimplex, 3);
  REQUIRE(m.exit_code == ExitOk);
  CHECK(m.report["all_pass"] == true);
  auto cc = run("cocycle-check", kTwoSimplex);
  REQUIRE(cc.exit_code == ExitOk);
  CHECK(cc.report["pass"] == true);
  CHECK(cc.report["triples"].get<std::size_t>() > 0);

  auto f = run("family", kSegment);
  REQUIRE(f.exit_code == ExitOk);
  CHECK(f.report["cells"] == Json::parse("[[0, 1], [1, 2]]"));
  CHECK(f.report["saturation_equal"] == true);
  CHECK(f.report["p_convex"] == true);
  // ϑ0·ϑ2 carries the generator, ϑ1·ϑ1 none
  const auto& basis = f.report["theta_basis"];
  auto find = [&](const char* pt) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i]["degree"] == 1 && basis[i]["point"][0] == pt) return i;
    FAIL("missing theta element");
    return std::size_t{0};
  };
  auto i0 = find("0/1"), i1 = find("1/1"), i2 = find("2/1");
  for (const auto& sc : f.report["structure_constants"]) {
    auto fi = sc["factors"][0].get<std::size_t>(), fj = sc["factors"][1].get<std::size_t>();
    if (fi == i0 && fj == i2) CHECK(sc["correction"] != Json::parse("[0]"));
    if (fi == i1 && fj == i1) CHECK(sc["correction"] == Json::parse("[0]"));
  }
  JobSpec job;
  job.command = "family";
  job.truncation = 0;
  CHECK(run_job(job, parse_json_text(kSegment)).exit_code == ExitSchema);
}
