#include "pgraph/coloring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pgraph/error.hpp"
#include "pgraph/filter_analysis.hpp"

namespace pgraph {

void check_simple(const ColoringInstance& g) {
  std::set<std::string> names;
  for (const auto& v : g.vertices) {
    if (!names.insert(v).second) throw Error(ErrorCode::invalid_argument, "repeated vertex " + v);
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [v, w] : g.edges) {
    if (!names.count(v) || !names.count(w)) {
      throw Error(ErrorCode::invalid_argument, "edge " + v + "-" + w + " names an unknown vertex");
    }
    if (v == w) throw Error(ErrorCode::invalid_argument, "self-loop at " + v);
    if (!seen.insert(std::minmax(v, w)).second) {
      throw Error(ErrorCode::invalid_argument, "repeated edge " + v + "-" + w);
    }
  }
}

PGraph reduce_from_3coloring(const ColoringInstance& g) {
  check_simple(g);
  if (g.edges.empty()) throw Error(ErrorCode::empty_graph, "the coloring instance has no edges");
  PGraph f(EventSpace::finite({"emit0", "emit1", "emit2"}), EventSpace::finite(g.vertices));
  auto emit = [](int i) { return Label::finite(Kind::action, {"emit" + std::to_string(i)}); };
  for (std::size_t k = 1; k <= g.edges.size(); ++k) {
    auto n = "_e" + std::to_string(k);
    for (auto p : {"ai", "as", "at"}) f.add_vertex(p + n, Kind::action);
    for (auto p : {"oi", "os", "ot"}) f.add_vertex(p + n, Kind::observation);
  }
  for (std::size_t k = 1; k <= g.edges.size(); ++k) {
    const auto& [v, w] = g.edges[k - 1];
    auto n = "_e" + std::to_string(k);
    f.add_edge("ai" + n, "oi" + n, emit(0));
    f.add_edge("as" + n, "os" + n, emit(1));
    f.add_edge("at" + n, "ot" + n, emit(2));
    f.add_edge("oi" + n, "as" + n, Label::finite(Kind::observation, {v}));
    f.add_edge("oi" + n, "at" + n, Label::finite(Kind::observation, {w}));
    if (k < g.edges.size()) {
      auto next = "ai_e" + std::to_string(k + 1);
      f.add_edge("os" + n, next, Label::finite(Kind::observation, {v, w}));
      f.add_edge("ot" + n, next, Label::finite(Kind::observation, {v, w}));
    }
  }
  f.add_initial("ai_e1");
  return f;
}

namespace {

bool colorable(const std::vector<std::vector<std::size_t>>& adj, std::size_t k, std::vector<int>& color) {
  const std::size_t n = adj.size();
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int used) -> bool {
    if (i == n) return true;
    // A vertex may take any used color or open exactly one new one.
    for (int c = 0; c <= used && c < static_cast<int>(k); ++c) {
      bool clash = std::any_of(adj[i].begin(), adj[i].end(), [&](std::size_t j) { return j < i && color[j] == c; });
      if (clash) continue;
      color[i] = c;
      if (rec(i + 1, std::max(used, c + 1))) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

std::vector<int> optimal_coloring(const ColoringInstance& g) {
  check_simple(g);
  if (g.vertices.size() > max_bruteforce()) {
    throw Error(ErrorCode::too_large, std::to_string(g.vertices.size()) + " vertices exceed the limit of " +
                                          std::to_string(max_bruteforce()));
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = i;
  std::vector<std::vector<std::size_t>> adj(g.vertices.size());
  for (const auto& [v, w] : g.edges) {
    adj[index[v]].push_back(index[w]);
    adj[index[w]].push_back(index[v]);
  }
  std::vector<int> color(g.vertices.size(), 0);
  for (std::size_t k = 1; k <= g.vertices.size(); ++k) {
    if (colorable(adj, k, color)) return color;
  }
  return color;
}

std::size_t chromatic_number(const ColoringInstance& g) {
  auto c = optimal_coloring(g);
  if (c.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(c.begin(), c.end())) + 1;
}

}  // namespace pgraph
