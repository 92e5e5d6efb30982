#include "pgraph/filter_analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <deque>
#include <map>
#include <set>

#include "pgraph/error.hpp"
#include "pgraph/presentations.hpp"

namespace pgraph {

namespace {

// Union of out-labels over a set of vertices, empty when they have none.
std::optional<Label> outputs(const PGraph& g, const std::set<std::size_t>& vs) {
  std::optional<Label> u;
  for (auto v : vs) {
    for (auto e : g.out_edges(v)) u = u ? unite(*u, g.edge(e).label) : g.edge(e).label;
  }
  return u;
}

bool same_outputs(const std::optional<Label>& a, const std::optional<Label>& b) {
  bool ea = !a || is_empty(*a);
  bool eb = !b || is_empty(*b);
  if (ea || eb) return ea == eb;
  return set_equal(*a, *b);
}

std::optional<std::size_t> step(const PGraph& g, std::size_t v, const EventValue& e) {
  for (auto ei : g.out_edges(v)) {
    if (contains(g.edge(ei).label, e)) return g.edge(ei).to;
  }
  return std::nullopt;
}

std::set<std::size_t> step_set(const PGraph& g, const std::set<std::size_t>& vs, const Label& on) {
  std::set<std::size_t> out;
  for (auto v : vs) {
    for (auto ei : g.out_edges(v)) {
      if (intersects(g.edge(ei).label, on)) out.insert(g.edge(ei).to);
    }
  }
  return out;
}

struct SearchState {
  std::size_t s1;
  std::set<std::size_t> s2;
  auto operator<=>(const SearchState&) const = default;
};

}  // namespace

EquivalenceVerdict equivalence_modulo_map(const PGraph& f1, const PGraph& f2, const LabelMap& h) {
  if (!akin(f1, f2)) throw Error(ErrorCode::not_akin, "filters start with different kinds of vertex");
  const EventMap& hy = h.side(Kind::observation);
  const PGraph g1 = as_state_determined(f1).graph;
  const PGraph g2 = as_state_determined(f2).graph;
  const EventSpace& domain = g1.observation_space();

  std::vector<SearchState> states;
  std::vector<std::optional<std::pair<std::size_t, Event>>> parent;
  std::map<SearchState, std::size_t> seen;
  std::deque<std::size_t> queue;
  auto visit = [&](SearchState s, std::optional<std::pair<std::size_t, Event>> from) {
    if (seen.count(s)) return;
    seen.emplace(s, states.size());
    states.push_back(std::move(s));
    parent.push_back(std::move(from));
    queue.push_back(states.size() - 1);
  };
  auto trace = [&](std::size_t i) {
    EventSequence s;
    for (; parent[i]; i = parent[i]->first) s.push_back(parent[i]->second);
    std::reverse(s.begin(), s.end());
    return s;
  };

  visit({g1.initial().front(), {g2.initial().front()}}, std::nullopt);
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    const auto s1 = states[i].s1;
    const auto s2 = states[i].s2;
    std::vector<Label> labels;
    for (auto e : g1.out_edges(s1)) labels.push_back(g1.edge(e).label);

    if (g1.vertex(s1).kind == Kind::observation) {
      std::vector<Label> theirs;
      for (auto v : s2) {
        for (auto e : g2.out_edges(v)) theirs.push_back(g2.edge(e).label);
      }
      for (const auto& c : refine_labels(theirs)) labels.push_back(preimage(hy, c, domain));
      for (const auto& c : refine_labels(labels)) {
        auto y = representative(c);
        auto t1 = step(g1, s1, y);
        if (!t1) continue;  // not an execution of the first filter
        visit({*t1, step_set(g2, s2, image_of(hy, y, Kind::observation))}, std::make_pair(i, Event{Kind::observation, y}));
      }
      continue;
    }

    auto o1 = outputs(g1, {s1});
    auto o2 = outputs(g2, s2);
    if (!same_outputs(o1, o2)) {
      EquivalenceVerdict r{false, trace(i), o1, o2, {}};
      r.detail = "after " + to_string(r.witness) + " the first filter outputs " + (o1 ? to_string(*o1) : "nothing") +
                 " but the second outputs " + (o2 ? to_string(*o2) : "nothing");
      return r;
    }
    for (const auto& c : refine_labels(labels)) {
      auto u = representative(c);
      auto t1 = step(g1, s1, u);
      if (!t1) continue;
      visit({*t1, step_set(g2, s2, singleton(Kind::action, u))}, std::make_pair(i, Event{Kind::action, u}));
    }
  }
  return {true, {}, {}, {}, "outputs agree after every observation-terminal execution"};
}

EquivalenceVerdict is_nondestructive_general(const PGraph& f, const LabelMap& h) {
  auto obs = LabelMap::observations(h.side(Kind::observation));
  return equivalence_modulo_map(f, apply_to_pgraph(obs, f), obs);
}

bool destructiveness_test_deterministic(const PGraph& f, const LabelMap& h) {
  auto det = is_deterministic_filter(f);
  if (!det.holds) throw Error(ErrorCode::not_deterministic, det.detail);
  auto mapped = apply_to_pgraph(LabelMap::observations(h.side(Kind::observation)), f);
  return is_single_outputting(to_state_determined(mapped).graph);
}

std::size_t max_bruteforce() {
  if (const char* env = std::getenv("PGRAPH_MAX_BRUTEFORCE")) {
    char* end = nullptr;
    auto v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 10;
}

namespace {

// Restricted growth strings over n elements with at most k blocks, ordered
// by block count so the first hit uses the fewest symbols.
template <typename Visit>
bool for_each_partition(std::size_t n, std::size_t blocks, Visit&& visit) {
  std::vector<std::size_t> rgs(n, 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) -> bool {
    if (i == n) return used == blocks && visit(rgs, used);
    // Not enough elements left to open the remaining blocks.
    if (used + (n - i) < blocks) return false;
    for (std::size_t b = 0; b <= used && b < blocks; ++b) {
      rgs[i] = b;
      if (rec(i + 1, std::max(used, b + 1))) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

MinimizationResult minimize_sensor_image(const PGraph& f, std::size_t n) {
  const auto& space = f.observation_space();
  if (space.type != EventSpace::Type::finite) {
    throw Error(ErrorCode::invalid_argument, "sensor minimization needs a finite observation space");
  }
  const auto& ys = space.events;
  if (ys.size() > max_bruteforce()) {
    throw Error(ErrorCode::too_large, std::to_string(ys.size()) + " observations exceed the limit of " +
                                          std::to_string(max_bruteforce()));
  }
  const bool deterministic = is_deterministic_filter(f).holds;
  MinimizationResult result;
  if (ys.empty()) {
    result.holds = true;
    result.witness = LabelMap::identity();
    return result;
  }
  for (std::size_t k = 1; k <= std::min(n, ys.size()); ++k) {
    std::vector<std::string> symbols;
    for (std::size_t b = 0; b < k; ++b) symbols.push_back("k" + std::to_string(b));
    bool found = for_each_partition(ys.size(), k, [&](const std::vector<std::size_t>& rgs, std::size_t) {
      ++result.candidates_checked;
      FiniteTableMap table;
      table.codomain = EventSpace::finite(symbols);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        table.table.emplace(EventValue(ys[i]), Label::finite(Kind::observation, {symbols[rgs[i]]}));
      }
      auto h = LabelMap::observations(EventMap(std::move(table)));
      bool ok = deterministic ? destructiveness_test_deterministic(f, h) : is_nondestructive_general(f, h).holds;
      if (ok) result.witness = std::move(h);
      return ok;
    });
    if (found) {
      result.holds = true;
      result.image_size = k;
      return result;
    }
  }
  return result;
}

std::size_t minimum_image_size(const PGraph& f) {
  auto r = minimize_sensor_image(f, f.observation_space().events.size());
  return r.image_size;
}

}  // namespace pgraph
