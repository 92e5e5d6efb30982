#include "pgraph/pgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

#include "pgraph/error.hpp"

namespace pgraph {

// ---------------------------------------------------------------- spaces

EventSpace EventSpace::finite(std::vector<std::string> events) {
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  return EventSpace{Type::finite, std::move(events), {}};
}

EventSpace EventSpace::product(std::vector<EventSpace> components) {
  if (components.empty()) throw Error(ErrorCode::invalid_argument, "product space needs at least one component");
  return EventSpace{Type::product, {}, std::move(components)};
}

Label full_label(const EventSpace& space, Kind kind) {
  switch (space.type) {
    case EventSpace::Type::finite: return Label(kind, FiniteLabel(space.events));
    case EventSpace::Type::real: return Label(kind, IntervalLabel::real_line());
    case EventSpace::Type::product: {
      ProductLabel::Term t;
      for (const auto& c : space.components) t.push_back(full_label(c, kind));
      return Label(kind, ProductLabel(t.size(), {t}));
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown space type");
}

bool space_contains(const EventSpace& space, const EventValue& e) {
  switch (space.type) {
    case EventSpace::Type::finite:
      return e.is_id() && std::binary_search(space.events.begin(), space.events.end(), e.id());
    case EventSpace::Type::real: return e.is_real();
    case EventSpace::Type::product:
      if (!e.is_tuple() || e.tuple().size() != space.components.size()) return false;
      for (std::size_t k = 0; k < space.components.size(); ++k) {
        if (!space_contains(space.components[k], e.tuple()[k])) return false;
      }
      return true;
  }
  return false;
}

std::optional<std::string> label_space_mismatch(const Label& label, const EventSpace& space) {
  switch (space.type) {
    case EventSpace::Type::finite: {
      if (label.variant() != LabelVariant::finite) return "expected a finite label";
      for (const auto& id : label.as_finite().events()) {
        if (!std::binary_search(space.events.begin(), space.events.end(), id)) {
          return "event '" + id + "' is not in the declared space";
        }
      }
      return std::nullopt;
    }
    case EventSpace::Type::real:
      if (label.variant() != LabelVariant::interval) return "expected an interval label";
      return std::nullopt;
    case EventSpace::Type::product: {
      if (label.variant() != LabelVariant::product) return "expected a product label";
      const auto& p = label.as_product();
      if (p.arity() != space.components.size()) return "product arity does not match the declared space";
      for (const auto& t : p.terms()) {
        for (std::size_t k = 0; k < t.size(); ++k) {
          if (auto why = label_space_mismatch(t[k], space.components[k])) {
            return "component " + std::to_string(k) + ": " + *why;
          }
        }
      }
      return std::nullopt;
    }
  }
  return "unknown space type";
}

std::optional<std::vector<EventValue>> enumerate_space(const EventSpace& space) {
  switch (space.type) {
    case EventSpace::Type::finite: {
      std::vector<EventValue> out;
      for (const auto& id : space.events) out.emplace_back(id);
      return out;
    }
    case EventSpace::Type::real: return std::nullopt;
    case EventSpace::Type::product: return enumerate_elements(full_label(space, Kind::action));
  }
  return std::nullopt;
}

std::string to_string(const EventSpace& space) {
  switch (space.type) {
    case EventSpace::Type::finite: {
      std::string out = "{";
      for (std::size_t i = 0; i < space.events.size(); ++i) out += (i ? "," : "") + space.events[i];
      return out + "}";
    }
    case EventSpace::Type::real: return "R";
    case EventSpace::Type::product: {
      std::string out;
      for (std::size_t i = 0; i < space.components.size(); ++i) {
        out += (i ? " x " : "") + to_string(space.components[i]);
      }
      return out;
    }
  }
  return "?";
}

// ---------------------------------------------------------------- PGraph

std::size_t PGraph::add_vertex(std::string id, Kind kind) {
  if (id.empty()) throw Error(ErrorCode::invalid_argument, "vertex id must be nonempty");
  if (find(id)) throw Error(ErrorCode::invalid_argument, "duplicate vertex id '" + id + "'");
  by_id_.emplace(id, vertices_.size());
  vertices_.push_back({std::move(id), kind});
  out_.emplace_back();
  return vertices_.size() - 1;
}

std::size_t PGraph::add_edge(std::size_t from, std::size_t to, Label label) {
  if (from >= vertices_.size() || to >= vertices_.size()) {
    throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
  }
  edges_.push_back({from, to, std::move(label)});
  out_[from].push_back(edges_.size() - 1);
  return edges_.size() - 1;
}

std::size_t PGraph::add_edge(const std::string& from, const std::string& to, Label label) {
  return add_edge(index(from), index(to), std::move(label));
}

void PGraph::add_initial(std::size_t v) {
  if (v >= vertices_.size()) throw Error(ErrorCode::invalid_argument, "initial vertex out of range");
  if (std::find(initial_.begin(), initial_.end(), v) == initial_.end()) initial_.push_back(v);
}

void PGraph::add_initial(const std::string& id) { add_initial(index(id)); }

std::optional<std::size_t> PGraph::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t PGraph::index(const std::string& id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::invalid_argument, "unknown vertex '" + id + "'");
}

void PGraph::set_space(Kind kind, EventSpace space) {
  (kind == Kind::action ? action_space_ : observation_space_) = std::move(space);
}

Kind PGraph::initial_kind() const {
  if (initial_.empty()) throw Error(ErrorCode::invalid_graph, "graph has no initial vertex");
  return vertices_[initial_.front()].kind;
}

// ---------------------------------------------------------------- validation

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.code == code; });
}

ValidationReport validate(const PGraph& g) {
  ValidationReport r;
  auto add = [&](std::string code, std::string detail) { r.issues.push_back({std::move(code), std::move(detail)}); };
  if (g.initial().empty()) add("NoInitialState", "the initial set is empty");
  for (auto v : g.initial()) {
    if (g.vertex(v).kind != g.vertex(g.initial().front()).kind) {
      add("MixedInitialKinds", "initial vertices '" + g.vertex(g.initial().front()).id + "' and '" + g.vertex(v).id +
                                   "' have different kinds");
      break;
    }
  }
  const auto& ua = g.action_space();
  const auto& uy = g.observation_space();
  if (ua.type == EventSpace::Type::finite && uy.type == EventSpace::Type::finite) {
    for (const auto& id : ua.events) {
      if (std::binary_search(uy.events.begin(), uy.events.end(), id)) {
        add("OverlappingEventSpaces", "event '" + id + "' is both an action and an observation");
      }
    }
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    const auto& from = g.vertex(e.from);
    const auto& to = g.vertex(e.to);
    std::string where = "edge " + std::to_string(i) + " (" + from.id + " -> " + to.id + ")";
    if (from.kind == to.kind) {
      add("BipartitenessViolation", where + " joins two " + std::string(to_string(from.kind)) + " vertices");
    }
    if (e.label.kind() != from.kind) {
      add("LabelKindMismatch", where + " carries an " + std::string(to_string(e.label.kind())) + " label");
      continue;
    }
    if (is_empty(e.label)) add("EmptyLabel", where + " has an empty label");
    if (auto why = label_space_mismatch(e.label, g.space(from.kind))) add("LabelSpaceMismatch", where + ": " + *why);
  }
  return r;
}

void require_valid(const PGraph& g) {
  auto r = validate(g);
  if (!r.ok()) throw Error(ErrorCode::validation_error, r.issues.front().code + ": " + r.issues.front().detail);
}

std::vector<bool> reachable_vertices(const PGraph& g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue;
  for (auto v : g.initial()) {
    if (!seen[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto e : g.out_edges(v)) {
      auto t = g.edge(e).to;
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

bool akin(const PGraph& a, const PGraph& b) { return a.initial_kind() == b.initial_kind(); }

// ---------------------------------------------------------------- executions

namespace {

std::vector<std::size_t> step(const PGraph& g, const std::vector<std::size_t>& current, const EventValue& e) {
  std::set<std::size_t> next;
  for (auto v : current) {
    for (auto ei : g.out_edges(v)) {
      const auto& edge = g.edge(ei);
      if (contains(edge.label, e)) next.insert(edge.to);
    }
  }
  return {next.begin(), next.end()};
}

}  // namespace

std::vector<std::size_t> reached_vertices(const PGraph& g, const EventSequence& s) {
  std::vector<std::size_t> current = g.initial();
  std::sort(current.begin(), current.end());
  if (s.empty()) return current;
  if (s.front().kind != g.initial_kind()) {
    throw Error(ErrorCode::kind_mismatch, "sequence starts with an " + std::string(to_string(s.front().kind)) +
                                              " but the graph starts with " +
                                              std::string(to_string(g.initial_kind())) + "s");
  }
  Kind expected = g.initial_kind();
  for (const auto& ev : s) {
    if (ev.kind != expected) return {};
    current = step(g, current, ev.value);
    if (current.empty()) return {};
    expected = opposite(expected);
  }
  return current;
}

bool is_execution(const PGraph& g, const EventSequence& s) { return s.empty() || !reached_vertices(g, s).empty(); }

LabelSampler refinement_sampler() {
  return [](std::span<const Label> labels) {
    std::vector<EventValue> out;
    for (const auto& block : refine_labels(labels)) out.push_back(representative(block));
    return out;
  };
}

namespace {

std::vector<EventValue> probes_for(const std::vector<Label>& labels) {
  if (labels.empty()) return {};
  switch (labels.front().variant()) {
    case LabelVariant::finite: {
      std::set<EventValue> ids;
      for (const auto& l : labels) {
        for (const auto& id : l.as_finite().events()) ids.insert(EventValue(id));
      }
      return {ids.begin(), ids.end()};
    }
    case LabelVariant::interval: {
      std::set<Rational> e;
      for (const auto& l : labels) e.insert(l.as_interval().endpoints().begin(), l.as_interval().endpoints().end());
      std::vector<EventValue> out;
      if (e.empty()) return {EventValue(Rational(0))};
      std::vector<Rational> sorted(e.begin(), e.end());
      out.emplace_back(Rational(sorted.front() - 1));
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        out.emplace_back(sorted[i]);
        if (i + 1 < sorted.size()) out.emplace_back(Rational((sorted[i] + sorted[i + 1]) / 2));
      }
      out.emplace_back(Rational(sorted.back() + 1));
      return out;
    }
    case LabelVariant::product: {
      std::size_t m = labels.front().as_product().arity();
      std::vector<std::vector<EventValue>> per(m);
      for (std::size_t k = 0; k < m; ++k) {
        std::vector<Label> comps;
        for (const auto& l : labels) {
          for (const auto& t : l.as_product().terms()) comps.push_back(t[k]);
        }
        per[k] = probes_for(comps);
        if (per[k].empty()) return {};
      }
      std::vector<EventValue> out;
      EventValue::Tuple cur(m);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == m) {
          out.emplace_back(cur);
          return;
        }
        for (const auto& v : per[k]) {
          cur[k] = v;
          rec(k + 1);
        }
      };
      rec(0);
      return out;
    }
  }
  return {};
}

}  // namespace

LabelSampler probe_sampler(std::span<const PGraph* const> graphs) {
  std::map<Kind, std::vector<Label>> by_kind;
  for (const auto* g : graphs) {
    for (const auto& e : g->edges()) by_kind[e.label.kind()].push_back(e.label);
  }
  auto probes = std::make_shared<std::map<Kind, std::vector<EventValue>>>();
  for (auto& [kind, labels] : by_kind) (*probes)[kind] = probes_for(labels);
  return [probes](std::span<const Label> labels) {
    std::vector<EventValue> out;
    if (labels.empty()) return out;
    auto it = probes->find(labels.front().kind());
    if (it == probes->end()) return out;
    for (const auto& p : it->second) {
      if (std::any_of(labels.begin(), labels.end(), [&](const Label& l) { return contains(l, p); })) out.push_back(p);
    }
    return out;
  };
}

std::set<EventSequence> executions_up_to(const PGraph& g, std::size_t depth, const LabelSampler& sampler) {
  std::set<EventSequence> out{EventSequence{}};
  if (g.initial().empty()) return out;
  struct Node {
    EventSequence seq;
    std::vector<std::size_t> at;
    Kind next;
  };
  std::vector<std::size_t> start = g.initial();
  std::sort(start.begin(), start.end());
  std::vector<Node> frontier{{{}, start, g.initial_kind()}};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Node> next_frontier;
    for (const auto& node : frontier) {
      std::vector<Label> labels;
      for (auto v : node.at) {
        for (auto e : g.out_edges(v)) labels.push_back(g.edge(e).label);
      }
      if (labels.empty()) continue;
      for (const auto& ev : sampler(labels)) {
        auto to = step(g, node.at, ev);
        if (to.empty()) continue;
        Node n{node.seq, std::move(to), opposite(node.next)};
        n.seq.push_back({node.next, ev});
        out.insert(n.seq);
        next_frontier.push_back(std::move(n));
      }
    }
    frontier = std::move(next_frontier);
  }
  return out;
}

// ---------------------------------------------------------------- union

namespace {

EventSpace merge_spaces(const EventSpace& a, const EventSpace& b) {
  if (a == b) return a;
  if (a.type == EventSpace::Type::finite && b.type == EventSpace::Type::finite) {
    auto events = a.events;
    events.insert(events.end(), b.events.begin(), b.events.end());
    return EventSpace::finite(std::move(events));
  }
  throw Error(ErrorCode::invalid_argument,
              "incompatible event spaces " + to_string(a) + " and " + to_string(b));
}

}  // namespace

UnionResult disjoint_union(const PGraph& a, const PGraph& b) {
  if (!akin(a, b)) throw Error(ErrorCode::not_akin, "one graph starts with actions and the other with observations");
  bool clash = false;
  for (const auto& v : b.vertices()) clash = clash || a.find(v.id).has_value();
  UnionResult r{PGraph(merge_spaces(a.action_space(), b.action_space()),
                       merge_spaces(a.observation_space(), b.observation_space())),
                {},
                {}};
  auto copy = [&](const PGraph& g, const std::string& prefix, std::vector<std::size_t>& map) {
    for (const auto& v : g.vertices()) map.push_back(r.graph.add_vertex(prefix + v.id, v.kind));
    for (const auto& e : g.edges()) r.graph.add_edge(map[e.from], map[e.to], e.label);
    for (auto v : g.initial()) r.graph.add_initial(map[v]);
  };
  copy(a, clash ? "0." : "", r.from_a);
  copy(b, clash ? "1." : "", r.from_b);
  return r;
}

PGraph pgraph_union(const PGraph& a, const PGraph& b) { return disjoint_union(a, b).graph; }

}  // namespace pgraph
