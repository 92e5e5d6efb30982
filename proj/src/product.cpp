#include "pgraph/product.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "pgraph/error.hpp"

namespace pgraph {

namespace {

std::optional<Label> union_of_out(const PGraph& g, std::size_t v) {
  std::vector<Label> labels;
  for (auto e : g.out_edges(v)) labels.push_back(g.edge(e).label);
  if (labels.empty()) return std::nullopt;
  return unite_all(labels, labels.front());
}

// Events in `have` but not in `cover`.
std::optional<Label> uncovered(const std::optional<Label>& have, const std::optional<Label>& cover) {
  if (!have) return std::nullopt;
  if (!cover) return have;
  auto d = subtract(*have, *cover);
  if (is_empty(d)) return std::nullopt;
  return d;
}

// Tarjan's strongly connected components.
std::vector<int> components(const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0;
  int ncomp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : succ[v]) {
      if (num[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (num[v] < 0) visit(v);
  }
  return comp;
}

}  // namespace

ProductGraph joint_product(const PGraph& a, const PGraph& b) {
  if (!akin(a, b)) throw Error(ErrorCode::not_akin, "one graph starts with actions and the other with observations");
  ProductGraph p{as_state_determined(a), as_state_determined(b), {}, {}, {}, {}, {}, {}};
  const auto& ga = p.a.graph;
  const auto& gb = p.b.graph;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::deque<std::size_t> queue;
  auto intern = [&](std::size_t v, std::size_t w) {
    auto it = index.find({v, w});
    if (it != index.end()) return it->second;
    std::size_t id = p.nodes.size();
    p.nodes.push_back({v, w, ga.vertex(v).kind, "(" + ga.vertex(v).id + "," + gb.vertex(w).id + ")"});
    p.out.emplace_back();
    p.parent_arc.emplace_back();
    index.emplace(std::make_pair(v, w), id);
    queue.push_back(id);
    return id;
  };
  intern(ga.initial().front(), gb.initial().front());
  while (!queue.empty()) {
    auto n = queue.front();
    queue.pop_front();
    auto [v, w, kind, id] = p.nodes[n];
    auto out_a = union_of_out(ga, v);
    auto out_b = union_of_out(gb, w);
    auto missing = kind == Kind::action ? uncovered(out_a, out_b) : uncovered(out_b, out_a);
    if (missing) p.safety_violations.push_back({n, *missing});
    for (auto ea : ga.out_edges(v)) {
      for (auto eb : gb.out_edges(w)) {
        auto joint = intersect(ga.edge(ea).label, gb.edge(eb).label);
        if (is_empty(joint)) continue;
        bool fresh = index.find({ga.edge(ea).to, gb.edge(eb).to}) == index.end();
        auto t = intern(ga.edge(ea).to, gb.edge(eb).to);
        p.arcs.push_back({n, t, std::move(joint)});
        p.out[n].push_back(p.arcs.size() - 1);
        if (fresh) p.parent_arc[t] = p.arcs.size() - 1;
      }
    }
  }
  std::vector<std::vector<std::size_t>> succ(p.nodes.size());
  for (const auto& arc : p.arcs) succ[arc.from].push_back(arc.to);
  auto comp = components(succ);
  std::vector<int> comp_size(p.nodes.size() + 1, 0);
  for (auto c : comp) ++comp_size[static_cast<std::size_t>(c)];
  p.on_cycle.assign(p.nodes.size(), false);
  for (std::size_t n = 0; n < p.nodes.size(); ++n) {
    if (comp_size[static_cast<std::size_t>(comp[n])] > 1) p.on_cycle[n] = true;
  }
  for (const auto& arc : p.arcs) {
    if (arc.from == arc.to) p.on_cycle[arc.from] = true;
  }
  return p;
}

EventSequence ProductGraph::path_to(std::size_t node) const {
  EventSequence s;
  for (auto n = node; parent_arc[n]; n = arcs[*parent_arc[n]].from) {
    const auto& arc = arcs[*parent_arc[n]];
    s.push_back({nodes[arc.from].kind, representative(arc.label)});
  }
  std::reverse(s.begin(), s.end());
  return s;
}

EventSequence ProductGraph::cycle_from(std::size_t node) const {
  // Breadth-first search for the shortest nonempty return.
  std::vector<std::optional<std::size_t>> via(nodes.size());
  std::deque<std::size_t> queue;
  for (auto ai : out[node]) {
    auto t = arcs[ai].to;
    if (t == node) return {{nodes[node].kind, representative(arcs[ai].label)}};
    if (!via[t]) {
      via[t] = ai;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    auto n = queue.front();
    queue.pop_front();
    for (auto ai : out[n]) {
      auto t = arcs[ai].to;
      if (t == node) {
        EventSequence s{{nodes[n].kind, representative(arcs[ai].label)}};
        for (auto m = n; m != node;) {
          const auto& arc = arcs[*via[m]];
          s.push_back({nodes[arc.from].kind, representative(arc.label)});
          m = arc.from;
        }
        std::reverse(s.begin(), s.end());
        return s;
      }
      if (!via[t]) {
        via[t] = ai;
        queue.push_back(t);
      }
    }
  }
  return {};
}

bool ProductGraph::acyclic() const {
  return std::none_of(on_cycle.begin(), on_cycle.end(), [](bool b) { return b; });
}

std::optional<EventSequence> ProductGraph::a_longest_execution() const {
  if (!acyclic()) return std::nullopt;
  const std::size_t n = nodes.size();
  std::vector<std::optional<std::size_t>> best(n);  // longest continuation length
  std::vector<std::optional<std::size_t>> next(n);
  std::function<std::size_t(std::size_t)> depth = [&](std::size_t v) -> std::size_t {
    if (best[v]) return *best[v];
    std::size_t d = 0;
    for (auto ai : out[v]) {
      auto c = 1 + depth(arcs[ai].to);
      if (c > d) {
        d = c;
        next[v] = ai;
      }
    }
    best[v] = d;
    return d;
  };
  if (n == 0) return EventSequence{};
  depth(0);
  EventSequence s;
  for (std::size_t v = 0; next[v];) {
    const auto& arc = arcs[*next[v]];
    s.push_back({nodes[v].kind, representative(arc.label)});
    v = arc.to;
  }
  return s;
}

std::optional<std::size_t> ProductGraph::longest_execution() const {
  auto s = a_longest_execution();
  if (!s) return std::nullopt;
  return s->size();
}

Verdict is_safe_on(const ProductGraph& p) {
  if (p.safety_violations.empty()) return {true, {}, "every reachable joint situation is covered"};
  const auto& v = p.safety_violations.front();
  const auto& node = p.nodes[v.node];
  Verdict r{false, p.path_to(v.node), {}};
  auto e = representative(v.missing);
  r.witness.push_back({node.kind, e});
  if (node.kind == Kind::action) {
    r.detail = "at " + node.id + " the first graph may take action " + to_string(e) +
               " which the second does not allow (missing " + to_string(v.missing) + ")";
  } else {
    r.detail = "at " + node.id + " the second graph may produce observation " + to_string(e) +
               " which the first does not handle (missing " + to_string(v.missing) + ")";
  }
  return r;
}

Verdict is_safe_on(const PGraph& a, const PGraph& b) { return is_safe_on(joint_product(a, b)); }

Verdict is_finite_on(const ProductGraph& p) {
  for (std::size_t n = 0; n < p.nodes.size(); ++n) {
    if (!p.on_cycle[n]) continue;
    Verdict r{false, p.path_to(n), {}};
    auto loop = p.cycle_from(n);
    r.witness.insert(r.witness.end(), loop.begin(), loop.end());
    r.detail = "joint executions can return to " + p.nodes[n].id + " indefinitely";
    return r;
  }
  return {true, {}, "longest joint execution has " + std::to_string(*p.longest_execution()) + " events"};
}

Verdict is_finite_on(const PGraph& a, const PGraph& b) { return is_finite_on(joint_product(a, b)); }

}  // namespace pgraph
