#include "pgraph/presentations.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "pgraph/error.hpp"

namespace pgraph {

namespace {

std::string set_name(const PGraph& g, const std::vector<std::size_t>& members) {
  std::vector<std::string> ids;
  for (auto v : members) ids.push_back(g.vertex(v).id);
  std::sort(ids.begin(), ids.end());
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out + "}";
}

std::vector<Label> out_labels(const PGraph& g, std::size_t v) {
  std::vector<Label> out;
  for (auto e : g.out_edges(v)) out.push_back(g.edge(e).label);
  return out;
}

}  // namespace

Presentation to_state_determined(const PGraph& g) {
  Presentation p{PGraph(g.action_space(), g.observation_space()), {}};
  if (g.initial().empty()) throw Error(ErrorCode::invalid_graph, "graph has no initial vertex");
  std::map<std::vector<std::size_t>, std::size_t> made;
  std::deque<std::size_t> queue;
  auto intern = [&](std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    auto it = made.find(members);
    if (it != made.end()) return it->second;
    auto id = p.graph.add_vertex(set_name(g, members), g.vertex(members.front()).kind);
    made.emplace(members, id);
    p.corresp.push_back(members);
    queue.push_back(id);
    return id;
  };
  p.graph.add_initial(intern(g.initial()));
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    auto members = p.corresp[s];
    std::vector<Label> labels;
    for (auto v : members) {
      for (auto& l : out_labels(g, v)) labels.push_back(std::move(l));
    }
    if (labels.empty()) continue;
    // Group refined classes by the set of states they lead to.
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Label>>> groups;
    for (const auto& cls : refine_labels(labels)) {
      auto e = representative(cls);
      std::vector<std::size_t> targets;
      for (auto v : members) {
        for (auto ei : g.out_edges(v)) {
          if (contains(g.edge(ei).label, e)) targets.push_back(g.edge(ei).to);
        }
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& gr) { return gr.first == targets; });
      if (it == groups.end()) {
        groups.push_back({targets, {cls}});
      } else {
        it->second.push_back(cls);
      }
    }
    for (auto& [targets, classes] : groups) {
      auto t = intern(targets);
      p.graph.add_edge(s, t, unite_all(classes, classes.front()));
    }
  }
  return p;
}

bool is_state_determined(const PGraph& g) {
  if (g.initial().size() != 1) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& out = g.out_edges(v);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        if (intersects(g.edge(out[i]).label, g.edge(out[j]).label)) return false;
      }
    }
  }
  return true;
}

Presentation as_state_determined(const PGraph& g) {
  if (!is_state_determined(g)) return to_state_determined(g);
  Presentation p{g, {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) p.corresp.push_back({v});
  return p;
}

namespace {

bool outputs_single(const PGraph& f, std::size_t v) {
  const auto& out = f.out_edges(v);
  return out.empty() || (out.size() == 1 && is_singleton(f.edge(out.front()).label));
}

}  // namespace

Presentation to_single_outputting(const PGraph& f) {
  Presentation p{PGraph(f.action_space(), f.observation_space()), {}};
  auto reach = reachable_vertices(f);
  std::vector<std::optional<std::size_t>> copy(f.vertex_count());
  auto add = [&](const std::string& id, Kind kind, std::size_t source) {
    std::string name = id;
    for (int n = 2; p.graph.find(name); ++n) name = id + "#" + std::to_string(n);
    auto v = p.graph.add_vertex(name, kind);
    p.corresp.push_back({source});
    return v;
  };
  auto elements_of = [&](const Label& l) {
    auto e = enumerate_elements(l);
    if (!e) {
      throw Error(ErrorCode::infinite_action_space,
                  "cannot split the action label " + to_string(l) + " into single actions");
    }
    return *e;
  };

  // Observation vertices and action vertices that already emit one event are copied.
  for (std::size_t v = 0; v < f.vertex_count(); ++v) {
    if (!reach[v]) continue;
    if (f.vertex(v).kind == Kind::observation || outputs_single(f, v)) copy[v] = add(f.vertex(v).id, f.vertex(v).kind, v);
  }
  for (std::size_t ei = 0; ei < f.edge_count(); ++ei) {
    const auto& e = f.edge(ei);
    if (copy[e.from] && copy[e.to]) p.graph.add_edge(*copy[e.from], *copy[e.to], e.label);
  }
  // Split the rest along each incoming observation edge.
  for (std::size_t ei = 0; ei < f.edge_count(); ++ei) {
    const auto& in = f.edge(ei);
    if (!reach[in.from] || copy[in.to]) continue;
    std::size_t va = in.to;
    for (auto oi : f.out_edges(va)) {
      const auto& out = f.edge(oi);
      for (const auto& i : elements_of(out.label)) {
        auto vi = add(f.vertex(va).id + ":" + to_string(i), Kind::action, va);
        p.graph.add_edge(*copy[in.from], vi, in.label);
        p.graph.add_edge(vi, *copy[out.to], singleton(Kind::action, i));
      }
    }
  }
  // Initial vertices.
  for (auto v1 : f.initial()) {
    if (copy[v1]) {
      p.graph.add_initial(*copy[v1]);
      continue;
    }
    for (auto oi : f.out_edges(v1)) {
      const auto& out = f.edge(oi);
      for (const auto& i : elements_of(out.label)) {
        auto vi = add(f.vertex(v1).id + ":" + to_string(i), Kind::action, v1);
        p.graph.add_edge(vi, *copy[out.to], singleton(Kind::action, i));
        p.graph.add_initial(vi);
      }
    }
  }
  return p;
}

bool is_single_outputting(const PGraph& f) {
  auto reach = reachable_vertices(f);
  for (std::size_t v = 0; v < f.vertex_count(); ++v) {
    if (reach[v] && f.vertex(v).kind == Kind::action && !outputs_single(f, v)) return false;
  }
  return true;
}

Verdict is_deterministic_filter(const PGraph& f) {
  auto sd = to_state_determined(f).graph;
  // Shortest path to each vertex, for witnesses.
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(sd.vertex_count());
  std::vector<bool> seen(sd.vertex_count(), false);
  std::deque<std::size_t> queue{sd.initial().front()};
  seen[sd.initial().front()] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (sd.vertex(v).kind == Kind::action && !outputs_single(sd, v)) {
      Verdict r{false, {}, {}};
      for (auto u = v; parent[u]; u = parent[u]->first) {
        const auto& e = sd.edge(parent[u]->second);
        r.witness.push_back({e.label.kind(), representative(e.label)});
      }
      std::reverse(r.witness.begin(), r.witness.end());
      const auto& out = sd.out_edges(v);
      EventValue first = representative(sd.edge(out[0]).label);
      EventValue second;
      if (out.size() > 1) {
        second = representative(sd.edge(out[1]).label);
      } else {
        second = representative(subtract(sd.edge(out[0]).label, singleton(Kind::action, first)));
      }
      r.detail = "two distinct successors: " + to_string(first) + " and " + to_string(second);
      return r;
    }
    for (auto ei : sd.out_edges(v)) {
      auto t = sd.edge(ei).to;
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = {v, ei};
        queue.push_back(t);
      }
    }
  }
  return {true, {}, "every observation-terminal execution has at most one successor"};
}

Presentation to_practicable_presentation(const PGraph& f) {
  auto verdict = is_deterministic_filter(f);
  if (!verdict.holds) {
    throw Error(ErrorCode::not_deterministic,
                "filter is not deterministic after " + to_string(verdict.witness) + " (" + verdict.detail + ")");
  }
  auto split = to_single_outputting(f);
  auto out = to_state_determined(split.graph);
  if (!is_state_determined(out.graph) || !is_single_outputting(out.graph)) {
    throw Error(ErrorCode::not_deterministic, "practicable conversion did not converge");
  }
  for (auto& members : out.corresp) {
    std::set<std::size_t> originals;
    for (auto m : members) originals.insert(split.corresp[m].begin(), split.corresp[m].end());
    members.assign(originals.begin(), originals.end());
  }
  return out;
}

PGraph to_practicable(const PGraph& f) { return to_practicable_presentation(f).graph; }

bool is_practicable(const PGraph& f) { return is_state_determined(f) && is_single_outputting(f); }

bool isomorphic(const PGraph& a, const PGraph& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count() || a.initial().size() != b.initial().size()) {
    return false;
  }
  auto is_initial = [](const PGraph& g, std::size_t v) {
    return std::find(g.initial().begin(), g.initial().end(), v) != g.initial().end();
  };
  auto signature = [&](const PGraph& g, std::size_t v) {
    auto labels = out_labels(g, v);
    std::sort(labels.begin(), labels.end());
    std::size_t in = 0;
    for (const auto& e : g.edges()) in += e.to == v;
    return std::make_tuple(g.vertex(v).kind, is_initial(g, v), in, labels);
  };
  std::vector<decltype(signature(a, 0))> sa;
  std::vector<decltype(signature(b, 0))> sb;
  for (std::size_t v = 0; v < n; ++v) {
    sa.push_back(signature(a, v));
    sb.push_back(signature(b, v));
  }
  std::vector<std::optional<std::size_t>> map(n);
  std::vector<bool> used(n, false);
  // Pairs between already-mapped vertices must carry the same labelled edges.
  auto consistent = [&](std::size_t v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!map[u]) continue;
      for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
        std::map<Label, int> la;
        std::map<Label, int> lb;
        for (auto ei : a.out_edges(x)) {
          if (a.edge(ei).to == y) ++la[a.edge(ei).label];
        }
        for (auto ei : b.out_edges(*map[x])) {
          if (b.edge(ei).to == *map[y]) ++lb[b.edge(ei).label];
        }
        if (la != lb) return false;
      }
    }
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || sa[v] != sb[w]) continue;
      map[v] = w;
      used[w] = true;
      if (consistent(v) && rec(v + 1)) return true;
      map[v].reset();
      used[w] = false;
    }
    return false;
  };
  return rec(0);
}

}  // namespace pgraph
