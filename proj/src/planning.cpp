#include "pgraph/planning.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pgraph/error.hpp"

namespace pgraph {

std::string_view to_string(SolveFailure f) {
  switch (f) {
    case SolveFailure::not_akin: return "NotAkin";
    case SolveFailure::not_finite: return "NotFinite";
    case SolveFailure::not_safe: return "NotSafe";
    case SolveFailure::dead_end: return "DeadEnd";
    case SolveFailure::terminates_outside_goal: return "TerminatesOutsideGoal";
  }
  return "?";
}

namespace {

// Vertices of a presentation whose members satisfy the quantified rule.
std::set<std::size_t> lift(const Presentation& p, const std::set<std::size_t>& marked, bool all) {
  std::set<std::size_t> out;
  for (std::size_t v = 0; v < p.corresp.size(); ++v) {
    const auto& members = p.corresp[v];
    auto in = [&](std::size_t m) { return marked.count(m) > 0; };
    bool take = all ? std::all_of(members.begin(), members.end(), in) : std::any_of(members.begin(), members.end(), in);
    if (take && !members.empty()) out.insert(v);
  }
  return out;
}

SolveVerdict fail(SolveFailure f, EventSequence witness, std::string detail) {
  return {false, f, std::move(witness), std::move(detail)};
}

}  // namespace

PlanningProblem problem_to_state_determined(const PlanningProblem& w) {
  auto p = as_state_determined(w.graph);
  auto goal = lift(p, w.goal, true);
  return {std::move(p.graph), std::move(goal)};
}

Plan plan_to_state_determined(const Plan& p) {
  auto sd = as_state_determined(p.graph);
  auto term = lift(sd, p.term, false);
  return {std::move(sd.graph), std::move(term)};
}

SolveVerdict solves(const Plan& p, const PlanningProblem& w) {
  if (!akin(p.graph, w.graph)) {
    return fail(SolveFailure::not_akin, {}, "the plan and the problem start with different kinds of vertex");
  }
  auto plan = plan_to_state_determined(p);
  auto world = problem_to_state_determined(w);
  auto prod = joint_product(plan.graph, world.graph);

  if (auto fin = is_finite_on(prod); !fin.holds) return fail(SolveFailure::not_finite, fin.witness, fin.detail);
  if (auto safe = is_safe_on(prod); !safe.holds) return fail(SolveFailure::not_safe, safe.witness, safe.detail);

  const auto& pg = prod.a.graph;
  const auto& wg = prod.b.graph;
  for (std::size_t n = 0; n < prod.nodes.size(); ++n) {
    const auto& node = prod.nodes[n];
    bool term = plan.term.count(node.a) > 0;
    bool goal = world.goal.count(node.b) > 0;
    if (pg.is_sink(node.a) && !term) {
      return fail(SolveFailure::dead_end, prod.path_to(n), "the plan stops at " + pg.vertex(node.a).id + " without terminating");
    }
    if (wg.is_sink(node.b) && !goal) {
      return fail(SolveFailure::dead_end, prod.path_to(n), "the world stops at " + wg.vertex(node.b).id + " outside the goal");
    }
    if (term && !goal) {
      return fail(SolveFailure::terminates_outside_goal, prod.path_to(n),
                  "the plan may terminate at " + pg.vertex(node.a).id + " while the world is at " + wg.vertex(node.b).id);
    }
  }

  // Every reachable pair must be able to reach a terminal pair. The product
  // is acyclic here, so one pass in reverse topological order suffices.
  std::vector<int> reaches(prod.nodes.size(), -1);
  std::function<bool(std::size_t)> can_reach = [&](std::size_t n) -> bool {
    if (reaches[n] >= 0) return reaches[n] == 1;
    bool r = plan.term.count(prod.nodes[n].a) > 0;
    for (auto ai : prod.out[n]) r = can_reach(prod.arcs[ai].to) || r;
    reaches[n] = r ? 1 : 0;
    return r;
  };
  for (std::size_t n = 0; n < prod.nodes.size(); ++n) {
    if (!can_reach(n)) {
      return fail(SolveFailure::dead_end, prod.path_to(n),
                  "no continuation from " + prod.nodes[n].id + " reaches the termination region");
    }
  }
  auto longest = prod.longest_execution();
  return {true, std::nullopt, {}, "every joint execution terminates in the goal within " + std::to_string(*longest) + " events"};
}

Plan plan_union(const Plan& p, const Plan& q) {
  auto u = disjoint_union(p.graph, q.graph);
  Plan r{std::move(u.graph), {}};
  for (auto v : p.term) r.term.insert(u.from_a[v]);
  for (auto v : q.term) r.term.insert(u.from_b[v]);
  return r;
}

Plan plan_union_state_determined(const Plan& p, const Plan& q) {
  auto u = disjoint_union(p.graph, q.graph);
  // Which operand each union vertex came from, and whether it is terminal there.
  std::vector<int> side(u.graph.vertex_count(), 0);
  std::vector<bool> terminal(u.graph.vertex_count(), false);
  for (std::size_t v = 0; v < u.from_a.size(); ++v) {
    side[u.from_a[v]] = 0;
    terminal[u.from_a[v]] = p.term.count(v) > 0;
  }
  for (std::size_t v = 0; v < u.from_b.size(); ++v) {
    side[u.from_b[v]] = 1;
    terminal[u.from_b[v]] = q.term.count(v) > 0;
  }
  auto sd = as_state_determined(u.graph);
  Plan r{sd.graph, {}};
  for (std::size_t s = 0; s < sd.corresp.size(); ++s) {
    bool nonempty[2] = {false, false};
    bool all_term[2] = {true, true};
    for (auto m : sd.corresp[s]) {
      nonempty[side[m]] = true;
      all_term[side[m]] = all_term[side[m]] && terminal[m];
    }
    if ((nonempty[0] && all_term[0]) || (nonempty[1] && all_term[1])) r.term.insert(s);
  }
  return r;
}

VertexRelation homomorphic_relation(const Plan& p, const PlanningProblem& w) {
  auto prod = joint_product(p.graph, w.graph);
  VertexRelation r;
  for (const auto& node : prod.nodes) {
    for (auto v : prod.a.corresp[node.a]) {
      for (auto x : prod.b.corresp[node.b]) r.emplace(v, x);
    }
  }
  return r;
}

Verdict is_homomorphic_solution(const Plan& p, const PlanningProblem& w) {
  auto s = solves(p, w);
  if (!s.solves) return {false, s.witness, "not a solution: " + s.detail};
  auto rel = homomorphic_relation(p, w);
  for (auto it = rel.begin(); it != rel.end(); ++it) {
    auto next = std::next(it);
    if (next != rel.end() && next->first == it->first) {
      return {false, {},
              "plan vertex " + p.graph.vertex(it->first).id + " meets world vertices " + w.graph.vertex(it->second).id +
                  " and " + w.graph.vertex(next->second).id};
    }
  }
  return {true, {}, "each plan vertex meets a single world vertex"};
}

Plan derive_homomorphic_solution(const Plan& p, const PlanningProblem& w) {
  if (!is_state_determined(w.graph)) {
    throw Error(ErrorCode::not_state_determined, "the problem must be given in state-determined form");
  }
  if (auto s = solves(p, w); !s.solves) throw Error(ErrorCode::not_a_solution, s.detail);

  auto plan = plan_to_state_determined(p);
  auto prod = joint_product(plan.graph, w.graph);
  const auto& pg = prod.a.graph;
  const auto& wg = w.graph;

  // World vertices met strictly after each node; finite, so acyclic.
  std::vector<std::optional<std::set<std::size_t>>> later(prod.nodes.size());
  std::function<const std::set<std::size_t>&(std::size_t)> after = [&](std::size_t n) -> const std::set<std::size_t>& {
    if (!later[n]) {
      std::set<std::size_t> s;
      for (auto ai : prod.out[n]) {
        auto t = prod.arcs[ai].to;
        s.insert(prod.nodes[t].b);
        const auto& rest = after(t);
        s.insert(rest.begin(), rest.end());
      }
      later[n] = std::move(s);
    }
    return *later[n];
  };

  // Labels the plan uses at the last visit to each world vertex.
  std::map<std::size_t, Label> chosen;
  std::set<std::size_t> term;
  for (std::size_t n = 0; n < prod.nodes.size(); ++n) {
    const auto& node = prod.nodes[n];
    if (after(n).count(node.b)) continue;
    if (plan.term.count(node.a)) term.insert(node.b);
    for (auto e : pg.out_edges(node.a)) {
      const auto& l = pg.edge(e).label;
      auto it = chosen.find(node.b);
      if (it == chosen.end()) {
        chosen.emplace(node.b, l);
      } else {
        it->second = unite(it->second, l);
      }
    }
  }

  Plan q{PGraph(wg.action_space(), wg.observation_space()), std::move(term)};
  for (const auto& v : wg.vertices()) q.graph.add_vertex(v.id, v.kind);
  for (const auto& e : wg.edges()) {
    auto it = chosen.find(e.from);
    if (it == chosen.end()) continue;
    auto l = intersect(e.label, it->second);
    if (!is_empty(l)) q.graph.add_edge(e.from, e.to, std::move(l));
  }
  for (auto v : wg.initial()) q.graph.add_initial(v);

  if (auto s = solves(q, w); !s.solves) {
    throw Error(ErrorCode::not_a_solution, "derived plan does not solve the problem: " + s.detail);
  }
  if (auto h = is_homomorphic_solution(q, w); !h.holds) {
    throw Error(ErrorCode::not_a_solution, "derived plan is not homomorphic: " + h.detail);
  }
  return q;
}

bool map_destructive_on_plan(const LabelMap& h, const Plan& p, const PlanningProblem& w) {
  Plan hp{apply_to_pgraph(h, p.graph), p.term};
  PlanningProblem hw{apply_to_pgraph(h, w.graph), w.goal};
  return !solves(hp, hw).solves;
}

namespace {

struct AndOrSearch {
  const PlanningProblem& w;
  // (world vertex, remaining depth) -> chosen out-edge at action vertices,
  // or the sentinel `terminal` / `all` when solved.
  static constexpr std::size_t terminal = static_cast<std::size_t>(-1);
  static constexpr std::size_t all = static_cast<std::size_t>(-2);
  std::map<std::pair<std::size_t, std::size_t>, std::optional<std::size_t>> memo;
  std::map<std::size_t, std::vector<std::size_t>> ordered;  // action out-edges, preferred first

  const std::vector<std::size_t>& choices(std::size_t v) {
    auto it = ordered.find(v);
    if (it != ordered.end()) return it->second;
    const auto& g = w.graph;
    std::vector<std::size_t> es = g.out_edges(v);
    auto size = [&](std::size_t e) {
      auto el = enumerate_elements(g.edge(e).label);
      return el ? el->size() : static_cast<std::size_t>(-1);
    };
    std::stable_sort(es.begin(), es.end(), [&](std::size_t a, std::size_t b) {
      auto sa = size(a);
      auto sb = size(b);
      if (sa != sb) return sa < sb;
      return g.edge(a).label < g.edge(b).label;
    });
    return ordered.emplace(v, std::move(es)).first->second;
  }

  bool solve(std::size_t v, std::size_t depth) {
    auto key = std::make_pair(v, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second.has_value();
    const auto& g = w.graph;
    std::optional<std::size_t> r;
    bool in_goal = w.goal.count(v) > 0;
    if (in_goal && (g.vertex(v).kind == Kind::action || g.is_sink(v))) {
      r = terminal;
    } else if (depth > 0 && !g.is_sink(v)) {
      if (g.vertex(v).kind == Kind::action) {
        for (auto e : choices(v)) {
          if (solve(g.edge(e).to, depth - 1)) {
            r = e;
            break;
          }
        }
      } else {
        bool ok = true;
        for (auto e : g.out_edges(v)) ok = ok && solve(g.edge(e).to, depth - 1);
        if (ok) r = all;
      }
    }
    memo[key] = r;
    return r.has_value();
  }

  std::size_t build(Plan& plan, std::map<std::pair<std::size_t, std::size_t>, std::size_t>& made, std::size_t v,
                    std::size_t depth) {
    auto key = std::make_pair(v, depth);
    if (auto it = made.find(key); it != made.end()) return it->second;
    const auto& g = w.graph;
    auto id = plan.graph.add_vertex(g.vertex(v).id + "@" + std::to_string(depth), g.vertex(v).kind);
    made.emplace(key, id);
    auto choice = *memo.at(key);
    if (choice == terminal) {
      plan.term.insert(id);
    } else if (choice == all) {
      for (auto e : g.out_edges(v)) plan.graph.add_edge(id, build(plan, made, g.edge(e).to, depth - 1), g.edge(e).label);
    } else {
      plan.graph.add_edge(id, build(plan, made, g.edge(choice).to, depth - 1), g.edge(choice).label);
    }
    return id;
  }
};

}  // namespace

std::optional<Plan> synthesize_plan(const PlanningProblem& w, std::size_t depth_bound) {
  auto world = problem_to_state_determined(w);
  const auto start = world.graph.initial().front();
  for (std::size_t d = 0; d <= depth_bound; ++d) {
    AndOrSearch search{world, {}, {}};
    if (!search.solve(start, d)) continue;
    Plan plan{PGraph(world.graph.action_space(), world.graph.observation_space()), {}};
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> made;
    plan.graph.add_initial(search.build(plan, made, start, d));
    if (auto s = solves(plan, w); !s.solves) {
      throw Error(ErrorCode::not_a_solution, "synthesized plan failed verification: " + s.detail);
    }
    return plan;
  }
  return std::nullopt;
}

}  // namespace pgraph
