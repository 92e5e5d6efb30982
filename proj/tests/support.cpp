#include "support.hpp"

#include <algorithm>

namespace pgraph::testing {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Label fin(std::vector<std::string> events, Kind kind) { return Label(kind, FiniteLabel(std::move(events))); }

Label ival(std::optional<Rational> lo, bool lo_closed, std::optional<Rational> hi, bool hi_closed, Kind kind) {
  return Label(kind, IntervalLabel::from_piece({std::move(lo), lo_closed, std::move(hi), hi_closed}));
}

Label pt(const Rational& x, Kind kind) { return Label(kind, IntervalLabel::point(x)); }

Label cup(const Label& a, const Label& b) { return unite(a, b); }

std::vector<Rational> sample_points(std::span<const Label> labels, long lo, long hi, std::size_t count,
                                    std::mt19937& rng) {
  std::vector<Rational> out;
  std::uniform_int_distribution<long> num(lo * 8, hi * 8);
  std::uniform_int_distribution<int> den_pick(0, 3);
  const long dens[] = {1, 2, 3, 8};
  while (out.size() < count) out.push_back(q(num(rng), 1) / dens[den_pick(rng)]);
  for (const auto& l : labels) {
    if (l.variant() != LabelVariant::interval) continue;
    for (const auto& e : l.as_interval().endpoints()) {
      out.push_back(e);
      out.push_back(e - q(1, 1000));
      out.push_back(e + q(1, 1000));
    }
  }
  return out;
}

Label random_interval_label(std::mt19937& rng, Kind kind) {
  std::uniform_int_distribution<int> pieces(0, 3);
  std::uniform_int_distribution<long> coord(-20, 20);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> shape(0, 9);
  Label out(kind, IntervalLabel{});
  int n = pieces(rng);
  for (int i = 0; i < n; ++i) {
    Rational a = q(coord(rng), 2);
    Rational b = q(coord(rng), 2);
    if (b < a) std::swap(a, b);
    int s = shape(rng);
    IntervalPiece p{a, coin(rng) == 1, b, coin(rng) == 1};
    if (s == 0) p = IntervalPiece::point(a);
    if (s == 1) p.lo.reset();
    if (s == 2) p.hi.reset();
    out = unite(out, Label(kind, IntervalLabel::from_piece(p)));
  }
  return out;
}

Label random_finite_label(std::mt19937& rng, int alphabet, Kind kind) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<std::string> ev;
  for (int i = 0; i < alphabet; ++i) {
    if (coin(rng) == 0) ev.push_back("e" + std::to_string(i));
  }
  return fin(std::move(ev), kind);
}

EventSequence alternating(std::initializer_list<const char*> ids, Kind first) {
  EventSequence s;
  Kind k = first;
  for (const char* id : ids) {
    s.push_back({k, EventValue(id)});
    k = opposite(k);
  }
  return s;
}

namespace {

std::vector<std::string> alphabet(const char* prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Nonempty random subset of `events` with at most `max` elements.
std::vector<std::string> pick(std::mt19937& rng, std::vector<std::string> events, std::size_t max) {
  std::shuffle(events.begin(), events.end(), rng);
  std::uniform_int_distribution<std::size_t> k(1, std::min(max, events.size()));
  events.resize(k(rng));
  return events;
}

}  // namespace

PGraph random_pgraph(std::mt19937& rng, const GraphShape& shape) {
  auto us = alphabet("a", shape.actions);
  auto ys = alphabet("y", shape.observations);
  PGraph g(EventSpace::finite(us), EventSpace::finite(ys));
  std::uniform_int_distribution<int> size(2, shape.max_vertices);
  std::uniform_int_distribution<int> coin(0, 1);
  int n = size(rng);
  std::vector<std::size_t> by_kind[2];
  for (int i = 0; i < n; ++i) {
    // The first two vertices fix one of each kind.
    Kind k = i < 2 ? (i == 0 ? Kind::action : Kind::observation) : (coin(rng) ? Kind::action : Kind::observation);
    by_kind[static_cast<int>(k)].push_back(g.add_vertex("v" + std::to_string(i), k));
  }
  std::uniform_int_distribution<int> outs(0, shape.max_out);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Kind k = g.vertex(v).kind;
    const auto& targets = by_kind[static_cast<int>(opposite(k))];
    const auto& events = k == Kind::action ? us : ys;
    std::uniform_int_distribution<std::size_t> to(0, targets.size() - 1);
    int m = outs(rng);
    if (shape.state_determined) {
      // Deal a shuffled alphabet into up to m disjoint nonempty labels.
      auto pool = events;
      std::shuffle(pool.begin(), pool.end(), rng);
      std::uniform_int_distribution<std::size_t> used(0, pool.size());
      pool.resize(used(rng));
      m = std::min<int>(m, static_cast<int>(pool.size()));
      if (m == 0) continue;
      std::vector<std::vector<std::string>> parts(m);
      for (std::size_t i = 0; i < pool.size(); ++i) parts[i < std::size_t(m) ? i : rng() % m].push_back(pool[i]);
      for (auto& part : parts) g.add_edge(v, targets[to(rng)], Label::finite(k, part));
    } else {
      for (int i = 0; i < m; ++i) g.add_edge(v, targets[to(rng)], Label::finite(k, pick(rng, events, 4)));
    }
  }
  Kind start = coin(rng) ? Kind::action : Kind::observation;
  const auto& pool = by_kind[static_cast<int>(start)];
  std::uniform_int_distribution<std::size_t> which(0, pool.size() - 1);
  g.add_initial(pool[which(rng)]);
  if (!shape.state_determined && coin(rng)) {
    auto extra = pool[which(rng)];
    if (extra != g.initial().front()) g.add_initial(extra);
  }
  return g;
}

PGraph random_safe_plan(std::mt19937& rng, const PGraph& world) {
  PGraph p(world.action_space(), world.observation_space());
  for (const auto& v : world.vertices()) p.add_vertex(v.id, v.kind);
  std::uniform_int_distribution<int> coin(0, 2);
  for (std::size_t v = 0; v < world.vertex_count(); ++v) {
    const auto& outs = world.out_edges(v);
    if (outs.empty()) continue;
    if (world.vertex(v).kind == Kind::observation) {
      // Observations no sibling reads may be accepted too; the plan stays state-determined.
      Label unread = full_label(world.observation_space(), Kind::observation);
      for (auto e : outs) unread = subtract(unread, world.edge(e).label);
      for (auto e : outs) {
        const auto& edge = world.edge(e);
        Label l = edge.label;
        if (coin(rng) == 0) {
          l = unite(l, unread);
          unread = subtract(unread, unread);
        }
        p.add_edge(v, edge.to, l);
      }
      continue;
    }
    // Keep one action from a random edge, plus others at random.
    std::uniform_int_distribution<std::size_t> first(0, outs.size() - 1);
    auto keep = first(rng);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const auto& edge = world.edge(outs[i]);
      const auto& events = edge.label.as_finite().events();
      if (i != keep && coin(rng) == 0) continue;
      p.add_edge(v, edge.to, Label::finite(Kind::action, pick(rng, events, events.size())));
    }
  }
  for (auto v : world.initial()) p.add_initial(v);
  return p;
}

EventMap random_finite_map(std::mt19937& rng, const EventSpace& space, Kind kind, int codomain, int max_image) {
  FiniteTableMap m;
  auto targets = alphabet("m", codomain);
  m.codomain = EventSpace::finite(targets);
  auto events = enumerate_space(space).value();
  for (const auto& e : events) m.table.emplace(e, Label::finite(kind, pick(rng, targets, max_image)));
  return EventMap(std::move(m));
}

EventMap random_injective_map(std::mt19937& rng, const EventSpace& space, Kind kind) {
  FiniteTableMap m;
  std::uniform_int_distribution<int> width(1, 2);
  int next = 0;
  std::vector<std::string> all;
  auto events = enumerate_space(space).value();
  std::shuffle(events.begin(), events.end(), rng);
  for (const auto& e : events) {
    std::vector<std::string> image;
    for (int k = width(rng); k > 0; --k) image.push_back("m" + std::to_string(next++));
    all.insert(all.end(), image.begin(), image.end());
    m.table.emplace(e, Label::finite(kind, image));
  }
  m.codomain = EventSpace::finite(all);
  return EventMap(std::move(m));
}

std::set<EventSequence> language(const PGraph& g, std::size_t depth, std::vector<const PGraph*> probes) {
  return executions_up_to(g, depth, probe_sampler(probes));
}

}  // namespace pgraph::testing
