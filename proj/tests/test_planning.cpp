#include <random>

#include "doctest.h"
#include "pgraph/error.hpp"
#include "pgraph/fixtures.hpp"
#include "pgraph/planning.hpp"
#include "support.hpp"

using namespace pgraph;
using namespace pgraph::testing;
namespace fx = pgraph::fixtures;

namespace {

constexpr Kind U = Kind::action;
constexpr Kind Y = Kind::observation;

std::set<std::string> ids(const PGraph& g, const std::set<std::size_t>& vs) {
  std::set<std::string> out;
  for (auto v : vs) out.insert(g.vertex(v).id);
  return out;
}

LabelMap conflate_observations() {
  FiniteTableMap m;
  m.codomain = EventSpace::finite({"y"});
  m.table.emplace(EventValue("y1"), Label::finite(Y, {"y"}));
  m.table.emplace(EventValue("y2"), Label::finite(Y, {"y"}));
  return LabelMap::observations(EventMap(std::move(m)));
}

LabelMap rename_observations() {
  FiniteTableMap m;
  m.codomain = EventSpace::finite({"n1", "n2"});
  m.table.emplace(EventValue("y1"), Label::finite(Y, {"n1"}));
  m.table.emplace(EventValue("y2"), Label::finite(Y, {"n2"}));
  return LabelMap::observations(EventMap(std::move(m)));
}

// Acyclic plan whose sinks are its termination region.
Plan self_solving() {
  PGraph g(EventSpace::finite({"go", "stop"}), EventSpace::finite({"l", "r"}));
  for (auto v : {"s", "x", "z"}) g.add_vertex(v, U);
  for (auto v : {"o1", "o2", "o3"}) g.add_vertex(v, Y);
  g.add_edge("s", "o1", Label::finite(U, {"go"}));
  g.add_edge("s", "o2", Label::finite(U, {"stop"}));
  g.add_edge("o1", "x", Label::finite(Y, {"l"}));
  g.add_edge("o1", "z", Label::finite(Y, {"r"}));
  g.add_edge("x", "o3", Label::finite(U, {"go"}));
  g.add_initial("s");
  std::set<std::size_t> sinks;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) sinks.insert(v);
  }
  return {g, sinks};
}

}  // namespace

TEST_CASE("both pentagon plans solve the problem") {
  auto w = fx::pentagon();
  auto lap = solves(fx::lap_plan(), w);
  CHECK(lap.solves);
  CHECK_FALSE(lap.failure);
  CHECK(solves(fx::direct_plan(), w).solves);
}

TEST_CASE("lap plan runs thirty events before terminating") {
  auto prod = joint_product(fx::lap_plan().graph, fx::pentagon().graph);
  CHECK(prod.longest_execution() == 30u);
  CHECK(prod.nodes.size() == 31);
  auto s = *prod.a_longest_execution();
  CHECK(s.back() == Event{Y, EventValue("y2")});
  CHECK(s[28] == Event{U, EventValue("u2")});
}

TEST_CASE("self-solving acyclic plan") {
  auto p = self_solving();
  PlanningProblem w{p.graph, p.term};
  CHECK(solves(p, w).solves);
  auto rel = homomorphic_relation(p, w);
  for (auto [a, b] : rel) CHECK(a == b);
  CHECK(is_homomorphic_solution(p, w).holds);
}

TEST_CASE("solves failure modes") {
  auto w = fx::pentagon();
  SUBCASE("not akin") {
    PGraph g(w.graph.action_space(), w.graph.observation_space());
    g.add_vertex("o", Y);
    g.add_initial("o");
    auto v = solves({g, {0}}, w);
    CHECK(v.failure == SolveFailure::not_akin);
  }
  SUBCASE("not finite: the world run against itself") {
    Plan p{w.graph, w.goal};
    auto v = solves(p, w);
    CHECK(v.failure == SolveFailure::not_finite);
    CHECK_FALSE(v.witness.empty());
  }
  SUBCASE("not safe: plan ignores y2") {
    auto p = fx::direct_plan();
    PGraph g(p.graph.action_space(), p.graph.observation_space());
    for (const auto& v : p.graph.vertices()) g.add_vertex(v.id, v.kind);
    for (const auto& e : p.graph.edges()) {
      if (p.graph.vertex(e.from).id == "b3") continue;
      g.add_edge(e.from, e.to, e.label);
    }
    g.add_edge("b3", "a4", Label::finite(Y, {"y1"}));
    g.add_initial("a0");
    auto v = solves({g, p.term}, w);
    REQUIRE(v.failure == SolveFailure::not_safe);
    CHECK(v.witness.back() == Event{Y, EventValue("y2")});
  }
  SUBCASE("dead end: stops early without terminating") {
    auto p = fx::direct_plan();
    auto v = solves({p.graph, {}}, w);
    CHECK(v.failure == SolveFailure::dead_end);
  }
  SUBCASE("terminates outside the goal") {
    auto p = fx::direct_plan();
    auto term = p.term;
    term.insert(p.graph.index("a2"));
    auto v = solves({p.graph, term}, w);
    CHECK(v.failure == SolveFailure::terminates_outside_goal);
    CHECK(v.witness.size() == 4);
  }
}

TEST_CASE("state-determined presentations of problems and plans") {
  auto w = fx::pentagon_unknown_start();
  auto sd = problem_to_state_determined(w);
  CHECK(is_state_determined(sd.graph));
  for (auto v : sd.goal) CHECK(sd.graph.vertex(v).id == "{w5}");
  PlanningProblem all{w.graph, {}};
  for (std::size_t v = 0; v < w.graph.vertex_count(); ++v) all.goal.insert(v);
  auto sd_all = problem_to_state_determined(all);
  CHECK(sd_all.goal.size() == sd_all.graph.vertex_count());
  CHECK(problem_to_state_determined({w.graph, {}}).goal.empty());

  auto lap = fx::lap_plan();
  auto p = plan_to_state_determined(lap);
  CHECK(ids(p.graph, p.term) == std::set<std::string>{"z_end"});
  CHECK(plan_to_state_determined({lap.graph, {}}).term.empty());
}

TEST_CASE("solubility survives state-determined presentations in every combination") {
  for (const auto& plan : {fx::lap_plan(), fx::direct_plan()}) {
    auto w = fx::pentagon();
    auto p2 = plan_to_state_determined(plan);
    auto w2 = problem_to_state_determined(w);
    bool a = solves(plan, w).solves;
    CHECK(a == solves(p2, w).solves);
    CHECK(a == solves(plan, w2).solves);
    CHECK(a == solves(p2, w2).solves);
  }
}

TEST_CASE("plan unions") {
  auto lap = fx::lap_plan();
  auto direct = fx::direct_plan();
  auto w = fx::pentagon();
  auto u = plan_union(lap, direct);
  CHECK(u.graph.vertex_count() == lap.graph.vertex_count() + direct.graph.vertex_count());
  CHECK(solves(u, w).solves);
  auto usd = plan_union_state_determined(lap, direct);
  CHECK(is_state_determined(usd.graph));
  CHECK(solves(usd, w).solves);

  auto self = plan_union(direct, direct);
  CHECK(solves(self, w).solves);
  auto self_sd = plan_union_state_determined(direct, direct);
  auto direct_sd = plan_to_state_determined(direct);
  CHECK(isomorphic(self_sd.graph, direct_sd.graph));
  CHECK(self_sd.term.size() == direct_sd.term.size());
}

TEST_CASE("homomorphic solutions on the pentagon") {
  auto w = fx::pentagon();
  CHECK(is_homomorphic_solution(fx::direct_plan(), w).holds);
  auto lap = is_homomorphic_solution(fx::lap_plan(), w);
  CHECK_FALSE(lap.holds);
  CHECK(lap.detail.find("meets world vertices") != std::string::npos);
  auto rel = homomorphic_relation(fx::lap_plan(), w);
  auto p0 = fx::lap_plan().graph.index("p0");
  std::size_t related = 0;
  for (auto [a, b] : rel) related += a == p0;
  CHECK(related >= 2);
}

TEST_CASE("deriving a homomorphic solution from the lap plan") {
  auto w = fx::pentagon();
  auto q = derive_homomorphic_solution(fx::lap_plan(), w);
  CHECK(q.graph.vertex_count() == w.graph.vertex_count());
  CHECK(solves(q, w).solves);
  CHECK(is_homomorphic_solution(q, w).holds);
  CHECK(ids(q.graph, q.term) == std::set<std::string>{"w5"});

  auto d = derive_homomorphic_solution(fx::direct_plan(), w);
  CHECK(d.graph.vertex_count() <= w.graph.vertex_count());
  CHECK(is_homomorphic_solution(d, w).holds);

  CHECK_THROWS_AS(derive_homomorphic_solution({fx::direct_plan().graph, {}}, w), Error);
  CHECK_THROWS_AS(derive_homomorphic_solution(fx::direct_plan(), fx::pentagon_unknown_start()), Error);
}

TEST_CASE("label maps on plans") {
  auto w = fx::pentagon();
  auto p = fx::direct_plan();
  CHECK_FALSE(map_destructive_on_plan(LabelMap::identity(), p, w));
  CHECK_FALSE(map_destructive_on_plan(rename_observations(), p, w));
  CHECK(map_destructive_on_plan(conflate_observations(), fx::lap_plan(), w));
}

TEST_CASE("plan synthesis") {
  auto w = fx::pentagon();
  auto p = synthesize_plan(w, 32);
  REQUIRE(p);
  CHECK(solves(*p, w).solves);
  CHECK(joint_product(p->graph, w.graph).longest_execution() == 10u);
  CHECK_FALSE(synthesize_plan(w, 9));

  auto unknown = fx::pentagon_unknown_start();
  auto q = synthesize_plan(unknown, 32);
  REQUIRE(q);
  CHECK(solves(*q, unknown).solves);

  // Without localization the merged start state offers u2, so this one is easy.
  CHECK(joint_product(q->graph, unknown.graph).longest_execution() == 2u);

  auto hazard = fx::pentagon_hazard();
  auto h = synthesize_plan(hazard, 32);
  REQUIRE(h);
  CHECK(solves(*h, hazard).solves);
  PlanningProblem conflated{apply_to_pgraph(conflate_observations(), hazard.graph), hazard.goal};
  CHECK_FALSE(synthesize_plan(conflated, 32));
  CHECK(map_destructive_on_plan(conflate_observations(), *h, hazard));

  PlanningProblem unreachable{w.graph, {w.graph.index("o5")}};
  CHECK_FALSE(synthesize_plan(unreachable, 40));
}
