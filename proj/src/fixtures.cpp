#include "pgraph/fixtures.hpp"

#include "pgraph/coloring.hpp"

namespace pgraph::fixtures {

namespace {

Label act(std::vector<std::string> events) { return Label::finite(Kind::action, std::move(events)); }
Label obs(std::vector<std::string> events) { return Label::finite(Kind::observation, std::move(events)); }

Label interval(Kind kind, std::optional<Rational> lo, bool lo_closed, std::optional<Rational> hi, bool hi_closed) {
  return Label(kind, IntervalLabel::from_piece(IntervalPiece{std::move(lo), lo_closed, std::move(hi), hi_closed}));
}

Label box(Kind kind, std::vector<Label> sides) {
  auto arity = sides.size();
  return Label(kind, ProductLabel(arity, {std::move(sides)}));
}

PGraph pentagon_graph() {
  PGraph g(EventSpace::finite({"u1", "u2"}), EventSpace::finite({"y1", "y2"}));
  for (int i = 0; i <= 5; ++i) g.add_vertex("w" + std::to_string(i), Kind::action);
  for (int i = 0; i <= 5; ++i) g.add_vertex("o" + std::to_string(i), Kind::observation);
  for (int i = 0; i < 4; ++i) {
    auto n = std::to_string(i);
    g.add_edge("w" + n, "o" + n, act({"u1"}));
    g.add_edge("o" + n, "w" + std::to_string(i + 1), obs({i == 3 ? "y2" : "y1"}));
  }
  g.add_edge("w4", "o4", act({"u2"}));
  g.add_edge("o4", "w5", obs({"y2"}));
  g.add_edge("w5", "o4", act({"u2"}));
  g.add_edge("w4", "o5", act({"u1"}));
  g.add_edge("w5", "o5", act({"u1"}));
  g.add_edge("o5", "w0", obs({"y1"}));
  return g;
}

}  // namespace

PlanningProblem pentagon() {
  auto g = pentagon_graph();
  g.add_initial("w0");
  auto goal = g.index("w5");
  return {std::move(g), {goal}};
}

PlanningProblem pentagon_unknown_start() {
  auto g = pentagon_graph();
  for (int i = 0; i <= 4; ++i) g.add_initial("w" + std::to_string(i));
  auto goal = g.index("w5");
  return {std::move(g), {goal}};
}

PlanningProblem pentagon_hazard() {
  auto g = pentagon_graph();
  g.add_vertex("o_stuck", Kind::observation);
  g.add_vertex("stuck", Kind::action);
  for (int i = 0; i <= 3; ++i) g.add_edge("w" + std::to_string(i), "o_stuck", act({"u2"}));
  g.add_edge("o_stuck", "stuck", obs({"y1"}));
  g.add_edge("stuck", "o_stuck", act({"u1", "u2"}));
  for (int i = 0; i <= 4; ++i) g.add_initial("w" + std::to_string(i));
  auto goal = g.index("w5");
  return {std::move(g), {goal}};
}

Plan lap_plan() {
  PGraph g(EventSpace::finite({"u1", "u2"}), EventSpace::finite({"y1", "y2"}));
  for (auto v : {"p0", "p1", "p2", "t", "z_end"}) g.add_vertex(v, Kind::action);
  for (auto v : {"q0", "q1", "q2", "z"}) g.add_vertex(v, Kind::observation);
  g.add_edge("p0", "q0", act({"u1"}));
  g.add_edge("q0", "p1", obs({"y1", "y2"}));
  g.add_edge("p1", "q1", act({"u1"}));
  g.add_edge("q1", "p2", obs({"y1"}));
  g.add_edge("q1", "t", obs({"y2"}));
  g.add_edge("p2", "q2", act({"u1"}));
  g.add_edge("q2", "p0", obs({"y1", "y2"}));
  g.add_edge("t", "z", act({"u2"}));
  g.add_edge("z", "z_end", obs({"y2"}));
  g.add_initial("p0");
  auto term = g.index("z_end");
  return {std::move(g), {term}};
}

Plan direct_plan() {
  PGraph g(EventSpace::finite({"u1", "u2"}), EventSpace::finite({"y1", "y2"}));
  for (int i = 0; i <= 5; ++i) g.add_vertex("a" + std::to_string(i), Kind::action);
  for (int i = 0; i <= 4; ++i) g.add_vertex("b" + std::to_string(i), Kind::observation);
  const char* actions[] = {"u1", "u1", "u1", "u1", "u2"};
  const char* observations[] = {"y1", "y1", "y1", "y2", "y2"};
  for (int i = 0; i < 5; ++i) {
    auto n = std::to_string(i);
    g.add_edge("a" + n, "b" + n, act({actions[i]}));
    g.add_edge("b" + n, "a" + std::to_string(i + 1), obs({observations[i]}));
  }
  g.add_initial("a0");
  auto term = g.index("a5");
  return {std::move(g), {term}};
}

PGraph overlapping_deterministic_filter() {
  PGraph g(EventSpace::finite({"emit0", "emit1"}), EventSpace::finite({"a", "b", "c"}));
  for (auto v : {"v0", "v1", "v2", "v3"}) g.add_vertex(v, Kind::action);
  g.add_vertex("o1", Kind::observation);
  g.add_edge("v0", "o1", act({"emit0"}));
  g.add_edge("o1", "v1", obs({"a", "b"}));
  g.add_edge("o1", "v2", obs({"b"}));
  g.add_edge("o1", "v3", obs({"c"}));
  g.add_edge("v1", "o1", act({"emit0"}));
  g.add_edge("v2", "o1", act({"emit0"}));
  g.add_edge("v3", "o1", act({"emit1"}));
  g.add_initial("v0");
  return g;
}

PGraph nondeterministic_filter() {
  PGraph g(EventSpace::finite({"emit0", "emit1"}), EventSpace::finite({"a", "b"}));
  for (auto v : {"v0", "v1", "v2", "v3"}) g.add_vertex(v, Kind::action);
  for (auto v : {"o1", "o2"}) g.add_vertex(v, Kind::observation);
  g.add_edge("v0", "o1", act({"emit0"}));
  g.add_edge("o1", "v0", obs({"a"}));
  g.add_edge("o1", "v1", obs({"b"}));
  g.add_edge("v1", "o2", act({"emit0"}));
  g.add_edge("o2", "v0", obs({"a"}));
  g.add_edge("o2", "v2", obs({"a", "b"}));
  g.add_edge("o2", "v3", obs({"b"}));
  g.add_edge("v2", "o1", act({"emit0"}));
  g.add_edge("v3", "o1", act({"emit1"}));
  g.add_initial("v0");
  return g;
}

PGraph agents_together_filter() {
  PGraph g(EventSpace::finite({"emit0", "emit1"}), EventSpace::finite({"a", "b", "c"}));
  // State, emitted bit, then (beam, next state) pairs.
  struct Row {
    const char* state;
    const char* emit;
    std::vector<std::pair<const char*, const char*>> moves;
  };
  const std::vector<Row> rows = {
      {"T1", "emit1", {{"a", "A12"}, {"c", "A13"}}},
      {"A12", "emit0", {{"a", "T12"}, {"b", "A13"}, {"c", "A23"}}},
      {"A13", "emit0", {{"c", "T13"}, {"a", "A23"}, {"b", "A12"}}},
      {"A23", "emit0", {{"b", "T23"}, {"a", "A13"}, {"c", "A12"}}},
      {"T12", "emit1", {{"a", "A12"}, {"b", "A23"}, {"c", "A13"}}},
      {"T13", "emit1", {{"a", "A12"}, {"c", "A13"}, {"b", "A23"}}},
      {"T23", "emit1", {{"b", "A23"}, {"a", "A12"}, {"c", "A13"}}},
  };
  for (const auto& r : rows) {
    g.add_vertex(r.state, Kind::action);
    g.add_vertex(std::string("y") + r.state, Kind::observation);
  }
  for (const auto& r : rows) {
    g.add_edge(r.state, std::string("y") + r.state, act({r.emit}));
    for (const auto& [beam, next] : r.moves) g.add_edge(std::string("y") + r.state, next, obs({beam}));
  }
  g.add_initial("T1");
  return g;
}

ColoringInstance coloring_example() {
  return {{"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}, {"b", "d"}}};
}

PGraph coloring_filter() { return reduce_from_3coloring(coloring_example()); }

LabelMap coloring_map() {
  FiniteTableMap m;
  m.codomain = EventSpace::finite({"x", "y", "z"});
  m.table.emplace(EventValue("a"), obs({"x"}));
  m.table.emplace(EventValue("b"), obs({"y"}));
  m.table.emplace(EventValue("c"), obs({"x"}));
  m.table.emplace(EventValue("d"), obs({"z"}));
  return LabelMap::observations(EventMap(std::move(m)));
}

PGraph create_ideal() {
  const Kind y = Kind::observation;
  std::vector<EventSpace> reals(5, EventSpace::real());
  PGraph g(EventSpace::finite({"emitF", "emitR", "emitT"}), EventSpace::product(reals));
  // Wall within 0.1 and every cliff sensor reading at least 0.02.
  std::vector<Label> sides{interval(y, std::nullopt, false, Rational(1, 10), false)};
  for (int i = 0; i < 4; ++i) sides.push_back(interval(y, Rational(2, 100), true, std::nullopt, false));
  auto clear = box(y, sides);
  auto blocked = subtract(full_label(g.observation_space(), y), clear);

  for (auto v : {"aF", "aT", "aR"}) g.add_vertex(v, Kind::action);
  for (auto v : {"oF", "oT", "oR"}) g.add_vertex(v, Kind::observation);
  g.add_edge("aF", "oF", act({"emitF"}));
  g.add_edge("aT", "oT", act({"emitT"}));
  g.add_edge("aR", "oR", act({"emitR"}));
  for (auto o : {"oF", "oT", "oR"}) g.add_edge(o, "aF", clear);
  g.add_edge("oF", "aT", blocked);
  g.add_edge("oT", "aR", blocked);
  g.add_edge("oR", "aT", blocked);
  g.add_initial("aF");
  return g;
}

namespace {

// 0 below zero, scale * x up to the register maximum, then saturated.
EventMap clip(const Rational& scale, const Rational& limit) {
  Rational top = limit / scale;
  PiecewiseAffineMap m;
  Affine zero{0, 0};
  Affine ramp{scale, 0};
  Affine full{0, limit};
  m.segments.push_back({IntervalPiece{std::nullopt, false, Rational(0), true}, zero, zero});
  m.segments.push_back({IntervalPiece{Rational(0), false, top, true}, ramp, ramp});
  m.segments.push_back({IntervalPiece{top, false, std::nullopt, false}, full, full});
  return EventMap(std::move(m));
}

// below -> `under`, at or above -> `over`.
EventMap threshold(const Rational& t, const std::string& under, const std::string& over) {
  PiecewiseConstantMap m;
  m.codomain = EventSpace::finite({"0", "1"});
  m.segments.push_back({IntervalPiece{std::nullopt, false, t, false}, obs({under})});
  m.segments.push_back({IntervalPiece{t, true, std::nullopt, false}, obs({over})});
  return EventMap(std::move(m));
}

LabelMap componentwise(EventMap wall, EventMap cliff) {
  ComponentwiseMap m;
  m.components.push_back(std::move(wall));
  for (int i = 0; i < 4; ++i) m.components.push_back(cliff);
  return LabelMap::observations(EventMap(std::move(m)));
}

}  // namespace

LabelMap create_clip() { return componentwise(clip(100, 1023), clip(1000, 4095)); }

LabelMap create_threshold() { return componentwise(threshold(10, "1", "0"), threshold(20, "0", "1")); }

LabelMap create_threshold_swapped() { return componentwise(threshold(20, "1", "0"), threshold(10, "0", "1")); }

LabelMap create_min() {
  FiniteTableMap m;
  m.codomain = EventSpace::finite({"0", "1"});
  for (int bits = 0; bits < 32; ++bits) {
    EventValue::Tuple t;
    bool all = true;
    for (int i = 4; i >= 0; --i) {
      bool b = (bits >> i) & 1;
      all = all && b;
      t.emplace_back(b ? "1" : "0");
    }
    m.table.emplace(EventValue(std::move(t)), obs({all ? "1" : "0"}));
  }
  return LabelMap::observations(EventMap(std::move(m)));
}

LabelMap create_constant() {
  FiniteTableMap m;
  m.codomain = EventSpace::finite({"0"});
  m.table.emplace(EventValue("0"), obs({"0"}));
  m.table.emplace(EventValue("1"), obs({"0"}));
  return LabelMap::observations(EventMap(std::move(m)));
}

PGraph overlap_intervals() {
  const Kind y = Kind::observation;
  PGraph g(EventSpace::finite({"low", "high"}), EventSpace::real());
  g.add_vertex("o", y);
  g.add_vertex("a1", Kind::action);
  g.add_vertex("a2", Kind::action);
  g.add_edge("o", "a1", interval(y, Rational(0), true, Rational(5), true));
  g.add_edge("o", "a2", interval(y, Rational(3), true, Rational(9), true));
  g.add_edge("a1", "o", act({"low"}));
  g.add_edge("a2", "o", act({"high"}));
  g.add_initial("o");
  return g;
}

PGraph wall_following() {
  const Kind u = Kind::action;
  PGraph g(EventSpace::product({EventSpace::real(), EventSpace::real()}),
           EventSpace::finite({"00", "01", "10", "11"}));
  auto speeds = [&](int lo_left, int hi_left, int lo_right, int hi_right) {
    return box(u, {interval(u, Rational(lo_left), true, Rational(hi_left), true),
                   interval(u, Rational(lo_right), true, Rational(hi_right), true)});
  };
  g.add_vertex("c", Kind::observation);
  for (auto v : {"forward", "seek", "escape"}) g.add_vertex(v, u);
  g.add_edge("c", "forward", obs({"10"}));
  g.add_edge("c", "seek", obs({"00"}));
  g.add_edge("c", "escape", obs({"01", "11"}));
  g.add_edge("forward", "c", speeds(200, 250, 200, 250));
  g.add_edge("seek", "c", speeds(50, 100, 150, 200));
  g.add_edge("escape", "c", speeds(0, 50, 250, 500));
  g.add_initial("c");
  return g;
}

}  // namespace pgraph::fixtures
