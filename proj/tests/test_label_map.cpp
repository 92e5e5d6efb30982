#include "doctest.h"
#include "pgraph/error.hpp"
#include "pgraph/fixtures.hpp"
#include "pgraph/presentations.hpp"
#include "support.hpp"

using namespace pgraph;
using namespace pgraph::testing;
namespace fx = pgraph::fixtures;

namespace {

constexpr Kind Y = Kind::observation;

const EventMap& component(const LabelMap& h, std::size_t k) {
  return std::get<ComponentwiseMap>(h.observation_map->value()).components.at(k);
}

EventMap table(std::vector<std::pair<std::string, std::vector<std::string>>> rows) {
  FiniteTableMap m;
  for (auto& [from, to] : rows) m.table.emplace(EventValue(from), Label::finite(Y, to));
  return EventMap(std::move(m));
}

Label real_line() { return Label(Y, IntervalLabel::real_line()); }

}  // namespace

TEST_CASE("images of labels") {
  auto l = ival(q(-3), true, q(5, 2), false);
  CHECK(image(EventMap(), l) == l);
  CHECK(apply_to_label(LabelMap::identity(), fin({"a", "b"})) == fin({"a", "b"}));

  auto clip_wall = component(fx::create_clip(), 0);
  CHECK(image(clip_wall, real_line()) == ival(q(0), true, q(1023), true));
  auto clip_cliff = component(fx::create_clip(), 1);
  CHECK(image(clip_cliff, real_line()) == ival(q(0), true, q(4095), true));

  auto threshold_wall = component(fx::create_threshold(), 0);
  CHECK(image(threshold_wall, ival(q(0), true, q(10), false)) == fin({"1"}));
  CHECK(image(threshold_wall, ival(q(10), true, q(1023), true)) == fin({"0"}));
  CHECK(image(threshold_wall, ival(q(0), true, q(1023), true)) == fin({"0", "1"}));

  LabelMap only_actions{EventMap(), std::nullopt};
  CHECK_THROWS_AS(apply_to_label(only_actions, fin({"a"})), Error);
}

TEST_CASE("maps applied to graphs") {
  auto f = fx::coloring_filter();
  CHECK(isomorphic(apply_to_pgraph(LabelMap::identity(), f), f));

  auto mapped = apply_to_pgraph(fx::coloring_map(), f);
  CHECK(mapped.observation_space() == EventSpace::finite({"x", "y", "z"}));
  REQUIRE(mapped.edge_count() == f.edge_count());
  for (std::size_t i = 0; i < f.edge_count(); ++i) {
    const auto& before = f.edge(i).label;
    const auto& after = mapped.edge(i).label;
    if (before.kind() != Y) {
      CHECK(after == before);
      continue;
    }
    std::set<std::string> expected;
    for (const auto& e : before.as_finite().events()) expected.insert(e == "b" ? "y" : e == "d" ? "z" : "x");
    CHECK(after == fin({expected.begin(), expected.end()}));
  }

  auto combined = apply_to_pgraph(fx::create_min(),
                                  apply_to_pgraph(fx::create_threshold(), apply_to_pgraph(fx::create_clip(), fx::create_ideal())));
  auto sensorless = apply_to_pgraph(fx::create_constant(), combined);
  for (const auto& e : sensorless.edges()) {
    if (e.label.kind() == Y) CHECK(e.label == fin({"0"}));
  }
}

TEST_CASE("pre-images") {
  auto h = table({{"a", {"x"}}, {"b", {"y"}}, {"c", {"x"}}, {"d", {"z"}}});
  auto domain = EventSpace::finite({"a", "b", "c", "d"});
  CHECK(preimage(h, fin({"x"}), domain) == fin({"a", "c"}));
  CHECK(preimage(EventMap(), fin({"a"}), domain) == fin({"a"}));

  auto threshold_wall = component(fx::create_threshold(), 0);
  auto pre = preimage(threshold_wall, fin({"1"}), EventSpace::real());
  CHECK(intersect(pre, ival(q(0), true, q(1023), true)) == ival(q(0), true, q(10), false));
  // Sampled check against the forward map.
  for (long x = -20; x <= 40; ++x) {
    Rational r = q(x, 2);
    bool hits = intersects(image_of(threshold_wall, EventValue(r), Y), fin({"1"}));
    CHECK(contains(pre, EventValue(r)) == hits);
  }
}

TEST_CASE("injectivity") {
  auto domain = EventSpace::finite({"a", "b"});
  CHECK(is_injective(table({{"a", {"x"}}, {"b", {"y"}}}), domain) == Injectivity::injective);
  auto ac = EventSpace::finite({"a", "c"});
  CHECK(is_injective(table({{"a", {"x"}}, {"c", {"x"}}}), ac) == Injectivity::not_injective);
  CHECK(is_injective(table({{"a", {"x", "y"}}, {"b", {"y"}}}), domain) == Injectivity::not_injective);

  PiecewiseAffineMap affine;
  affine.segments.push_back({IntervalPiece::whole(), Affine{2, 1}, Affine{2, 1}});
  CHECK(is_injective(EventMap(affine), EventSpace::real()) == Injectivity::injective);
  PiecewiseAffineMap flat;
  flat.segments.push_back({IntervalPiece::whole(), Affine{0, 1}, Affine{0, 1}});
  CHECK(is_injective(EventMap(flat), EventSpace::real()) == Injectivity::not_injective);
  CHECK(is_injective(fx::coloring_map(), fx::coloring_filter()) == Injectivity::not_injective);
}

TEST_CASE("composition") {
  auto h = table({{"a", {"x"}}, {"b", {"y"}}});
  auto domain = EventSpace::finite({"a", "b"});
  auto ih = compose(EventMap(), h, domain);
  CHECK(image(ih, fin({"a"})) == fin({"x"}));
  CHECK(image(ih, fin({"b"})) == fin({"y"}));

  auto ideal = fx::create_ideal();
  auto fh = compose(fx::create_threshold(), fx::create_clip(), ideal);
  auto symbols = apply_to_pgraph(fh, ideal);
  auto stepwise = apply_to_pgraph(fx::create_threshold(), apply_to_pgraph(fx::create_clip(), ideal));
  CHECK(isomorphic(symbols, stepwise));
  REQUIRE(symbols.observation_space().type == EventSpace::Type::product);
  for (const auto& c : symbols.observation_space().components) CHECK(c == EventSpace::finite({"0", "1"}));

  auto kg = compose(fx::create_constant(), fx::create_min(), stepwise);
  const auto& side = std::get<FiniteTableMap>(kg.observation_map->value());
  CHECK(side.table.size() == 32);
  for (const auto& [from, to] : side.table) CHECK(to == fin({"0"}));

  auto clash = table({{"p", {"q"}}});
  CHECK_THROWS_AS(compose(clash, h, domain), Error);
}

TEST_CASE("maps refuse empty images and partial tables") {
  FiniteTableMap empty_image;
  empty_image.table.emplace(EventValue("a"), fin({}));
  CHECK_THROWS_AS(EventMap(std::move(empty_image)), Error);

  auto partial = table({{"a", {"x"}}});
  CHECK_THROWS_AS(check_total(partial, EventSpace::finite({"a", "b"})), Error);

  PiecewiseConstantMap gap;
  gap.segments.push_back({IntervalPiece{std::nullopt, false, q(0), false}, fin({"n"})});
  CHECK_THROWS_AS(EventMap(std::move(gap)), Error);
}

TEST_CASE("images distribute over unions") {
  std::mt19937 rng(31);
  auto space = EventSpace::finite({"e0", "e1", "e2", "e3", "e4"});
  for (int i = 0; i < 200; ++i) {
    auto h = random_finite_map(rng, space, Y, 4, 2);
    auto a = random_finite_label(rng, 5);
    auto b = random_finite_label(rng, 5);
    CHECK(image(h, unite(a, b)) == unite(image(h, a), image(h, b)));
  }
  auto clip_wall = component(fx::create_clip(), 0);
  for (int i = 0; i < 200; ++i) {
    auto a = random_interval_label(rng);
    auto b = random_interval_label(rng);
    CHECK(set_equal(image(clip_wall, unite(a, b)), unite(image(clip_wall, a), image(clip_wall, b))));
  }
}

TEST_CASE("pre-image adjunction") {
  std::mt19937 rng(32);
  auto space = EventSpace::finite({"e0", "e1", "e2", "e3", "e4"});
  for (int i = 0; i < 200; ++i) {
    auto h = random_finite_map(rng, space, Y, 4, 2);
    auto t = random_finite_label(rng, 4);
    t = Label::finite(Y, [&] {
      std::vector<std::string> m;
      for (const auto& e : t.as_finite().events()) m.push_back("m" + e.substr(1));
      return m;
    }());
    auto pre = preimage(h, t, space);
    for (const auto& e : space.events) {
      CHECK(contains(pre, EventValue(e)) == intersects(image_of(h, EventValue(e), Y), t));
    }
    auto range = image(h, full_label(space, Y));
    if (intersects(range, t)) CHECK(intersects(image(h, pre), t));
  }
}
