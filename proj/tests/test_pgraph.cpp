#include "doctest.h"
#include "pgraph/error.hpp"
#include "pgraph/fixtures.hpp"
#include "pgraph/product.hpp"
#include "support.hpp"

using namespace pgraph;
using namespace pgraph::testing;
namespace fx = pgraph::fixtures;

namespace {

constexpr Kind U = Kind::action;
constexpr Kind Y = Kind::observation;

// Two vertices and one edge, enough to break one rule at a time.
PGraph tiny() {
  PGraph g(EventSpace::finite({"go"}), EventSpace::finite({"ping"}));
  g.add_vertex("a", U);
  g.add_vertex("o", Y);
  g.add_edge("a", "o", Label::finite(U, {"go"}));
  return g;
}

// Plain chain a -go-> o -ping-> b; acyclic, ends in an action sink.
PGraph chain() {
  auto g = tiny();
  g.add_vertex("b", U);
  g.add_edge("o", "b", Label::finite(Y, {"ping"}));
  g.add_initial("a");
  return g;
}

}  // namespace

TEST_CASE("validation reports each broken rule") {
  CHECK(validate(fx::wall_following()).ok());
  CHECK(validate(fx::pentagon().graph).ok());

  auto no_init = tiny();
  CHECK(validate(no_init).has("NoInitialState"));

  auto same_kind = tiny();
  same_kind.add_vertex("b", U);
  same_kind.add_edge("a", "b", Label::finite(U, {"go"}));
  same_kind.add_initial("a");
  CHECK(validate(same_kind).has("BipartitenessViolation"));

  auto wrong_space = tiny();
  wrong_space.add_vertex("b", U);
  wrong_space.add_edge("o", "b", Label::finite(Y, {"go"}));
  wrong_space.add_initial("a");
  CHECK(validate(wrong_space).has("LabelSpaceMismatch"));

  auto mixed = chain();
  mixed.add_initial("o");
  CHECK(validate(mixed).has("MixedInitialKinds"));
  CHECK_THROWS_AS(require_valid(mixed), Error);
}

TEST_CASE("pentagon executions follow its interaction language") {
  auto g = fx::pentagon().graph;
  CHECK(is_execution(g, alternating({"u1", "y1", "u1", "y1", "u1", "y1", "u1", "y2", "u2"})));
  CHECK(is_execution(g, alternating({"u1", "y1", "u1", "y1", "u1", "y1", "u1", "y2", "u2", "y2", "u2", "y2", "u1", "y1"})));
  CHECK(is_execution(g, {}));
  CHECK_FALSE(is_execution(g, alternating({"u2"})));
  CHECK_FALSE(is_execution(g, alternating({"u1", "y2"})));
  CHECK_THROWS_AS(is_execution(g, alternating({"y1"}, Y)), Error);
}

TEST_CASE("bounded enumeration") {
  auto g = fx::pentagon().graph;
  CHECK(executions_up_to(g, 0, refinement_sampler()) == std::set<EventSequence>{{}});
  auto two = executions_up_to(g, 2, refinement_sampler());
  CHECK(two == std::set<EventSequence>{{}, alternating({"u1"}), alternating({"u1", "y1"})});

  auto left = executions_up_to(fx::overlapping_deterministic_filter(), 1, refinement_sampler());
  CHECK(left == std::set<EventSequence>{{}, alternating({"emit0"})});
}

TEST_CASE("enumeration is prefix-closed and alternating") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto g = random_pgraph(rng);
    auto runs = executions_up_to(g, 5, refinement_sampler());
    for (const auto& s : runs) {
      if (s.empty()) continue;
      CHECK(runs.count(EventSequence(s.begin(), s.end() - 1)) == 1);
      CHECK(s.front().kind == g.initial_kind());
      for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k].kind != s[k - 1].kind);
      CHECK(is_execution(g, s));
    }
  }
}

TEST_CASE("unions") {
  auto a = fx::pentagon().graph;
  auto aa = pgraph_union(a, a);
  CHECK(aa.vertex_count() == 2 * a.vertex_count());
  CHECK(aa.vertex(0).id == "0.w0");
  std::vector<const PGraph*> probes{&a, &aa};
  CHECK(language(aa, 6, probes) == language(a, 6, probes));

  // A lone initial action vertex contributes only the empty execution.
  PGraph empty(a.action_space(), a.observation_space());
  empty.add_vertex("only", U);
  empty.add_initial("only");
  auto ae = pgraph_union(a, empty);
  CHECK(language(ae, 6, {&a, &ae}) == language(a, 6, {&a, &ae}));

  auto left = fx::overlapping_deterministic_filter();
  left.set_space(U, EventSpace::finite({"emit0", "emit1", "u1", "u2"}));
  left.set_space(Y, EventSpace::finite({"a", "b", "c", "y1", "y2"}));
  a.set_space(U, left.action_space());
  a.set_space(Y, left.observation_space());
  auto mixed = pgraph_union(a, left);
  CHECK(is_execution(mixed, alternating({"u1"})) == (is_execution(a, alternating({"u1"})) || is_execution(left, alternating({"u1"}))));
  std::vector<const PGraph*> all{&a, &left, &mixed};
  auto la = language(a, 4, all);
  auto ll = language(left, 4, all);
  la.insert(ll.begin(), ll.end());
  CHECK(language(mixed, 4, all) == la);

  PGraph obs_first(a.action_space(), a.observation_space());
  obs_first.add_vertex("o", Y);
  obs_first.add_initial("o");
  CHECK_THROWS_AS(pgraph_union(a, obs_first), Error);
}

TEST_CASE("union language is the union of languages on random graphs") {
  std::mt19937 rng(12);
  int compared = 0;
  while (compared < 60) {
    auto a = random_pgraph(rng);
    auto b = random_pgraph(rng);
    if (!akin(a, b)) continue;
    auto u = pgraph_union(a, b);
    std::vector<const PGraph*> all{&a, &b, &u};
    auto expected = language(a, 6, all);
    auto lb = language(b, 6, all);
    expected.insert(lb.begin(), lb.end());
    CHECK(language(u, 6, all) == expected);
    ++compared;
  }
}

TEST_CASE("joint products") {
  auto agents = fx::agents_together_filter();
  auto self = joint_product(agents, agents);
  for (const auto& n : self.nodes) CHECK(n.a == n.b);

  auto w = fx::pentagon();
  auto direct = joint_product(fx::direct_plan().graph, w.graph);
  std::map<std::size_t, std::set<std::size_t>> seen;
  for (const auto& n : direct.nodes) seen[n.a].insert(n.b);
  for (const auto& [plan_vertex, world] : seen) CHECK(world.size() == 1);

  auto lap = joint_product(fx::lap_plan().graph, w.graph);
  CHECK(lap.longest_execution() == 30u);
  CHECK(lap.acyclic());
  CHECK_THROWS_AS(joint_product(fx::lap_plan().graph, fx::wall_following()), Error);
}

TEST_CASE("safety") {
  auto w = fx::pentagon();
  CHECK(is_safe_on(w.graph, w.graph).holds);
  CHECK(is_safe_on(fx::lap_plan().graph, w.graph).holds);

  // Direct plan that only listens for y1 at its fourth step.
  auto p = fx::direct_plan().graph;
  PGraph cut(p.action_space(), p.observation_space());
  for (const auto& v : p.vertices()) cut.add_vertex(v.id, v.kind);
  for (const auto& e : p.edges()) {
    if (p.vertex(e.from).id == "b3") continue;
    cut.add_edge(e.from, e.to, e.label);
  }
  cut.add_edge("b3", "a4", Label::finite(Y, {"y1"}));
  cut.add_initial("a0");
  auto v = is_safe_on(cut, w.graph);
  REQUIRE_FALSE(v.holds);
  CHECK(v.witness.back() == Event{Y, EventValue("y2")});
  CHECK(v.witness.size() == 8);
}

TEST_CASE("safety is reflexive on random graphs") {
  std::mt19937 rng(13);
  for (int i = 0; i < 60; ++i) {
    auto g = random_pgraph(rng);
    CHECK(is_safe_on(g, g).holds);
  }
}

TEST_CASE("finiteness") {
  auto w = fx::pentagon();
  CHECK(is_finite_on(chain(), chain()).holds);
  CHECK(is_finite_on(fx::lap_plan().graph, w.graph).holds);
  auto v = is_finite_on(w.graph, w.graph);
  REQUIRE_FALSE(v.holds);
  CHECK(is_execution(w.graph, v.witness));
  CHECK(v.witness.size() >= 2);
}

TEST_CASE("finite products have no joint execution beyond the longest path") {
  std::mt19937 rng(14);
  int checked = 0;
  while (checked < 40) {
    auto a = random_pgraph(rng);
    auto b = random_pgraph(rng);
    if (!akin(a, b)) continue;
    auto prod = joint_product(a, b);
    if (!is_finite_on(prod).holds) continue;
    auto len = *prod.longest_execution();
    std::vector<const PGraph*> both{&a, &b};
    auto la = language(a, len + 1, both);
    auto lb = language(b, len + 1, both);
    std::size_t longest = 0;
    for (const auto& s : la) {
      if (lb.count(s)) longest = std::max(longest, s.size());
    }
    CHECK(longest == len);
    ++checked;
  }
}
