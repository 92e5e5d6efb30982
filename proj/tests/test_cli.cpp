#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "pgraph/fixture_files.hpp"
#include "pgraph/json_io.hpp"

namespace fs = std::filesystem;
using namespace pgraph;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Fixture documents written once into a scratch directory.
const fs::path& dir() {
  static const fs::path d = [] {
    auto p = fs::temp_directory_path() / "pgraph_cli_tests";
    fs::create_directories(p);
    for (const auto& doc : fixtures::fixture_documents()) std::ofstream(p / doc.name) << doc.text;
    std::ofstream(p / "broken.json") << "{\"format_version\": 1, \"spaces\": ";
    return p;
  }();
  return d;
}

std::string at(const char* name) { return (dir() / name).string(); }

}  // namespace

TEST_CASE("exit codes follow the property named by the subcommand") {
  CHECK(run({"check-solves", at("plan_laps.json"), at("pentagon.json")}).code == 0);
  CHECK(run({"check-solves", at("plan_direct.json"), at("pentagon.json")}).code == 0);
  CHECK(run({"homomorphic", at("plan_direct.json"), at("pentagon.json")}).code == 0);
  CHECK(run({"homomorphic", at("plan_laps.json"), at("pentagon.json")}).code == 1);
  CHECK(run({"check-destructive", at("create_combined.json"), "--map", at("map_constant.json")}).code == 1);
  CHECK(run({"check-destructive", at("create_symbols.json"), "--map", at("map_min.json"), "--deterministic"}).code == 0);
  CHECK(run({"check-deterministic", at("filter_overlapping.json")}).code == 0);
  CHECK(run({"check-deterministic", at("filter_nondeterministic.json")}).code == 1);
  CHECK(run({"validate", at("pentagon.json")}).code == 0);
  CHECK(run({"case-study"}).code == 0);
}

TEST_CASE("input and usage errors exit with 2") {
  auto broken = run({"determinize", at("broken.json")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("SyntaxError") != std::string::npos);
  CHECK(run({"determinize", at("missing.json")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"check-equiv", at("filter_overlapping.json")}).code == 2);
  CHECK(run({"enumerate", at("pentagon.json"), "--depth", "9"}).code == 2);
  CHECK(run({"check-destructive", at("filter_nondeterministic.json"), "--map", at("coloring_map.json"),
             "--deterministic"}).code == 2);
  CHECK(run({"check-solves", at("pentagon.json"), at("pentagon.json")}).code == 2);
}

TEST_CASE("witnesses and machine-readable verdicts") {
  auto plain = run({"check-deterministic", at("filter_nondeterministic.json"), "--witness"});
  CHECK(plain.out.find("witness: emit0 b emit0 b") != std::string::npos);
  auto json = run({"--json", "check-deterministic", at("filter_nondeterministic.json")});
  auto v = io::parse_json(json.out);
  CHECK(v["holds"] == false);
  CHECK(v["witness"].size() == 4);
  auto after = run({"check-deterministic", at("filter_nondeterministic.json"), "--json"});
  CHECK(after.out == json.out);
}

TEST_CASE("conversions write graphs and correspondences") {
  auto corresp = (dir() / "corresp.json").string();
  auto r = run({"determinize", at("filter_overlapping.json"), "--corresp", corresp});
  REQUIRE(r.code == 0);
  auto g = io::parse_graph(r.out);
  CHECK(g.vertex(g.initial().front()).id == "{v0}");
  auto c = io::parse_json(io::read_file(corresp));
  CHECK(c["correspondence"]["{v1,v2}"] == io::Json::array({"v1", "v2"}));

  auto p = run({"practicable", at("filter_overlapping.json")});
  REQUIRE(p.code == 0);
  CHECK(run({"--dot", "single-output", at("filter_agents.json")}).out.rfind("digraph", 0) == 0);

  auto out = (dir() / "reduced.json").string();
  CHECK(run({"reduce-coloring", at("coloring_instance.json"), "-o", out}).code == 0);
  CHECK(io::read_file(out) == io::read_file(at("coloring_filter.json")));
}

TEST_CASE("minimize emits a reusable witness map") {
  auto map = (dir() / "witness_map.json").string();
  CHECK(run({"minimize", at("coloring_filter.json"), "--n", "2"}).code == 1);
  auto r = run({"minimize", at("coloring_filter.json"), "--n", "3", "-o", map});
  REQUIRE(r.code == 0);
  CHECK(run({"check-destructive", at("coloring_filter.json"), "--map", map}).code == 0);
  CHECK(run({"check-destructive", at("coloring_filter.json"), "--map", map, "--deterministic"}).code == 0);
}

TEST_CASE("planning subcommands") {
  auto derived = (dir() / "derived.json").string();
  CHECK(run({"homogenize", at("plan_laps.json"), at("pentagon.json"), "-o", derived}).code == 0);
  CHECK(run({"homomorphic", derived, at("pentagon.json")}).code == 0);
  auto synth = run({"synthesize", at("pentagon.json"), "--bound", "12"});
  REQUIRE(synth.code == 0);
  CHECK(io::parse_plan(synth.out).term.size() >= 1);
  CHECK(run({"synthesize", at("pentagon.json"), "--bound", "9"}).code == 1);
  auto map = (dir() / "conflate.json").string();
  std::ofstream(map) << R"({"observation_map":{"kind":"finite","table":{"y1":["y"],"y2":["y"]}}})";
  CHECK(run({"plan-destructive", "--map", map, at("plan_laps.json"), at("pentagon.json")}).code == 1);
}

TEST_CASE("enumeration and schema") {
  auto r = run({"enumerate", at("pentagon.json"), "--depth", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "(empty)\nu1\nu1 y1\n");
  auto s = run({"--schema"});
  CHECK(s.code == 0);
  CHECK(io::parse_json(s.out).contains("$defs"));
  auto swapped = run({"case-study", "--swapped", "--json"});
  CHECK(swapped.code == 0);
  CHECK(io::parse_json(swapped.out)["rows"].size() == 4);
}
