#pragma once

#include <vector>

#include "pgraph/pgraph.hpp"

namespace pgraph {

/// For each output vertex, the input vertices it stands for.
using Correspondence = std::vector<std::vector<std::size_t>>;

struct Presentation {
  PGraph graph;
  Correspondence corresp;
};

/// Powerset construction over refined label classes. Output vertex ids are
/// the sorted member ids, e.g. "{a,b}". Only reachable sets are built.
Presentation to_state_determined(const PGraph& g);
bool is_state_determined(const PGraph& g);
/// g itself with the identity correspondence when it is already
/// state-determined, otherwise to_state_determined(g).
Presentation as_state_determined(const PGraph& g);

/// Splits every reachable action vertex whose output is not a single event
/// into one copy per (incoming edge, outgoing edge, action). Throws
/// infinite_action_space when a label to be split cannot be enumerated.
Presentation to_single_outputting(const PGraph& f);
bool is_single_outputting(const PGraph& f);

/// Whether every observation-terminal execution has at most one successor.
/// A failing verdict carries the shortest such execution and names two of
/// its distinct successor outputs.
Verdict is_deterministic_filter(const PGraph& f);

/// State-determined, single-outputting equivalent. Throws not_deterministic.
PGraph to_practicable(const PGraph& f);
/// to_practicable with the correspondence back to the vertices of f.
Presentation to_practicable_presentation(const PGraph& f);
bool is_practicable(const PGraph& f);

/// Structural isomorphism respecting kinds, initial status and edge labels.
bool isomorphic(const PGraph& a, const PGraph& b);

}  // namespace pgraph
