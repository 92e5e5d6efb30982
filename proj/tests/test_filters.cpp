#include "doctest.h"
#include "pgraph/coloring.hpp"
#include "pgraph/error.hpp"
#include "pgraph/filter_analysis.hpp"
#include "pgraph/fixtures.hpp"
#include "support.hpp"

using namespace pgraph;
using namespace pgraph::testing;
namespace fx = pgraph::fixtures;

namespace {

EventSequence events(std::initializer_list<std::pair<Kind, const char*>> es) {
  EventSequence s;
  for (auto [k, v] : es) s.push_back({k, EventValue(v)});
  return s;
}

constexpr Kind U = Kind::action;
constexpr Kind Y = Kind::observation;

LabelMap table_map(std::vector<std::pair<std::string, std::string>> rows, std::vector<std::string> codomain) {
  FiniteTableMap m;
  m.codomain = EventSpace::finite(std::move(codomain));
  for (auto& [from, to] : rows) m.table.emplace(EventValue(from), Label::finite(Y, {to}));
  return LabelMap::observations(EventMap(std::move(m)));
}

}  // namespace

TEST_CASE("overlapping labels can still give a deterministic filter") {
  auto f = fx::overlapping_deterministic_filter();
  CHECK_FALSE(is_state_determined(f));
  CHECK(is_deterministic_filter(f).holds);
  auto p = to_practicable(f);
  CHECK(is_practicable(p));
}

TEST_CASE("nondeterministic filter witness") {
  auto v = is_deterministic_filter(fx::nondeterministic_filter());
  REQUIRE_FALSE(v.holds);
  CHECK(v.witness == events({{U, "emit0"}, {Y, "b"}, {U, "emit0"}, {Y, "b"}}));
  CHECK(v.detail.find("two distinct successors") != std::string::npos);
  CHECK_THROWS_AS(to_practicable(fx::nondeterministic_filter()), Error);
}

TEST_CASE("agents-together filter is already practicable") {
  auto f = fx::agents_together_filter();
  CHECK(is_single_outputting(f));
  CHECK(is_state_determined(f));
  CHECK(isomorphic(to_practicable(f), f));
}

TEST_CASE("equivalence modulo the identity is language equality of outputs") {
  auto f = fx::overlapping_deterministic_filter();
  auto v = equivalence_modulo_map(f, f, LabelMap::identity());
  CHECK(v.holds);
  auto w = equivalence_modulo_map(f, to_practicable(f), LabelMap::identity());
  CHECK(w.holds);
}

TEST_CASE("equivalence reports the first differing output") {
  auto f = fx::overlapping_deterministic_filter();
  // Same shape, but c now leads to emit0.
  auto g = fx::overlapping_deterministic_filter();
  PGraph h(g.action_space(), g.observation_space());
  for (const auto& v : g.vertices()) h.add_vertex(v.id, v.kind);
  for (const auto& e : g.edges()) {
    bool swap = g.vertex(e.from).id == "v3";
    h.add_edge(e.from, e.to, swap ? Label::finite(U, {"emit0"}) : e.label);
  }
  h.add_initial("v0");
  auto v = equivalence_modulo_map(f, h, LabelMap::identity());
  REQUIRE_FALSE(v.holds);
  CHECK(v.witness == events({{U, "emit0"}, {Y, "c"}}));
  REQUIRE(v.left_outputs);
  CHECK(to_string(*v.left_outputs) == "{emit1}");
  CHECK_THROWS_AS(equivalence_modulo_map(f, fx::overlap_intervals(), LabelMap::identity()), Error);
}

TEST_CASE("observation map conflating the branch of the nondeterminism-free filter") {
  auto f = fx::overlapping_deterministic_filter();
  auto merge_bc = table_map({{"a", "p"}, {"b", "p"}, {"c", "p"}}, {"p"});
  CHECK_FALSE(is_nondestructive_general(f, merge_bc).holds);
  CHECK_FALSE(destructiveness_test_deterministic(f, merge_bc));
  auto merge_ab = table_map({{"a", "p"}, {"b", "p"}, {"c", "r"}}, {"p", "r"});
  CHECK(is_nondestructive_general(f, merge_ab).holds);
  CHECK(destructiveness_test_deterministic(f, merge_ab));
  CHECK_THROWS_AS(destructiveness_test_deterministic(fx::nondeterministic_filter(), merge_ab), Error);
}

TEST_CASE("create hierarchy: only the constant map is destructive") {
  auto ideal = fx::create_ideal();
  REQUIRE(is_deterministic_filter(ideal).holds);
  auto signals = apply_to_pgraph(fx::create_clip(), ideal);
  auto symbols = apply_to_pgraph(fx::create_threshold(), signals);
  auto combined = apply_to_pgraph(fx::create_min(), symbols);

  CHECK(destructiveness_test_deterministic(ideal, fx::create_clip()));
  CHECK(is_nondestructive_general(ideal, fx::create_clip()).holds);
  CHECK(destructiveness_test_deterministic(signals, fx::create_threshold()));
  CHECK(is_nondestructive_general(signals, fx::create_threshold()).holds);
  CHECK(destructiveness_test_deterministic(symbols, fx::create_min()));
  CHECK(is_nondestructive_general(symbols, fx::create_min()).holds);
  CHECK_FALSE(destructiveness_test_deterministic(combined, fx::create_constant()));
  CHECK_FALSE(is_nondestructive_general(combined, fx::create_constant()).holds);
  CHECK(combined.observation_space() == EventSpace::finite({"0", "1"}));
}

TEST_CASE("coloring reduction shape") {
  auto f = fx::coloring_filter();
  CHECK(f.vertex_count() == 30);
  CHECK(f.vertex(f.initial().front()).id == "ai_e1");
  CHECK(is_practicable(f));
  CHECK(f.observation_space() == EventSpace::finite({"a", "b", "c", "d"}));
  CHECK_THROWS_AS(reduce_from_3coloring(ColoringInstance{{"a"}, {}}), Error);
  CHECK_THROWS_AS(reduce_from_3coloring(ColoringInstance{{"a"}, {{"a", "a"}}}), Error);
}

TEST_CASE("coloring map is non-destructive on the reduction") {
  auto f = fx::coloring_filter();
  CHECK(destructiveness_test_deterministic(f, fx::coloring_map()));
  CHECK(is_nondestructive_general(f, fx::coloring_map()).holds);
  auto clash = table_map({{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "z"}}, {"x", "y", "z"});
  CHECK_FALSE(destructiveness_test_deterministic(f, clash));
}

TEST_CASE("chromatic number and minimum image size agree on the example") {
  auto g = fx::coloring_example();
  CHECK(chromatic_number(g) == 3);
  auto f = fx::coloring_filter();
  CHECK_FALSE(minimize_sensor_image(f, 2).holds);
  auto r = minimize_sensor_image(f, 3);
  CHECK(r.holds);
  CHECK(r.image_size == 3);
  REQUIRE(r.witness);
  CHECK(destructiveness_test_deterministic(f, *r.witness));
  CHECK(minimum_image_size(f) == 3);
}

TEST_CASE("chromatic numbers of small graphs") {
  CHECK(chromatic_number({{"a", "b"}, {{"a", "b"}}}) == 2);
  CHECK(chromatic_number({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}}) == 3);
  CHECK(chromatic_number({{"a", "b", "c", "d"},
                          {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}}}) == 4);
  CHECK(chromatic_number({{"a", "b", "c"}, {}}) == 1);
}

TEST_CASE("sensor minimization refuses large observation spaces") {
  std::vector<std::string> ys;
  for (int i = 0; i < 11; ++i) ys.push_back("y" + std::to_string(i));
  PGraph g(EventSpace::finite({"e"}), EventSpace::finite(ys));
  g.add_vertex("o", Y);
  g.add_initial("o");
  CHECK_THROWS_AS(minimize_sensor_image(g, 2), Error);
  CHECK_THROWS_AS(minimize_sensor_image(fx::overlap_intervals(), 2), Error);
}
