#pragma once

#include <random>
#include <set>
#include <vector>

#include "pgraph/label_map.hpp"

namespace pgraph::testing {

Rational q(long num, long den = 1);
Label fin(std::vector<std::string> events, Kind kind = Kind::observation);
Label ival(std::optional<Rational> lo, bool lo_closed, std::optional<Rational> hi, bool hi_closed,
           Kind kind = Kind::observation);
Label pt(const Rational& x, Kind kind = Kind::observation);
Label cup(const Label& a, const Label& b);

/// Rationals with small denominators spread over [lo, hi], plus every
/// endpoint of the given labels and points just beside them.
std::vector<Rational> sample_points(std::span<const Label> labels, long lo, long hi, std::size_t count,
                                    std::mt19937& rng);

/// Random interval label with endpoints drawn from small-denominator rationals.
Label random_interval_label(std::mt19937& rng, Kind kind = Kind::observation);
/// Random finite label over the alphabet {e0, ..., e(alphabet-1)}; may be empty.
Label random_finite_label(std::mt19937& rng, int alphabet, Kind kind = Kind::observation);

/// Alternating sequence of identifier events starting with `first`.
EventSequence alternating(std::initializer_list<const char*> ids, Kind first = Kind::action);

struct GraphShape {
  int max_vertices = 8;
  int actions = 3;       // alphabet a0, a1, ...
  int observations = 3;  // alphabet y0, y1, ...
  int max_out = 3;       // out-edges per vertex
  bool state_determined = false;
};

/// Random valid p-graph with finite labels. Every vertex kind occurs; the
/// initial set has one or two vertices of a random kind (one when
/// state-determined, where sibling labels are also made disjoint).
PGraph random_pgraph(std::mt19937& rng, const GraphShape& shape = {});

/// Sub-plan of a state-determined world: same vertices, a random nonempty
/// subset of the actions at each action vertex, every observation kept and
/// sometimes observations no sibling reads accepted. Safe on the world by construction.
PGraph random_safe_plan(std::mt19937& rng, const PGraph& world);

/// Random total map on a finite space of `kind`, images drawn as nonempty
/// subsets of {m0, ..., m(codomain-1)} with at most `max_image` elements.
EventMap random_finite_map(std::mt19937& rng, const EventSpace& space, Kind kind, int codomain, int max_image);
/// Random map whose images are pairwise disjoint nonempty sets.
EventMap random_injective_map(std::mt19937& rng, const EventSpace& space, Kind kind);

/// Executions up to `depth`, sampled with one probe set shared by `probes`
/// (which should include g) so that languages of different graphs compare.
std::set<EventSequence> language(const PGraph& g, std::size_t depth, std::vector<const PGraph*> probes);

}  // namespace pgraph::testing
