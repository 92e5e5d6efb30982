#pragma once

#include <optional>
#include <vector>

#include "pgraph/presentations.hpp"

namespace pgraph {

/// Reachable part of the synchronous product of two state-determined graphs.
/// Each reachable pair is reached by exactly the joint executions that end at
/// its two components.
struct ProductGraph {
  struct Node {
    std::size_t a;
    std::size_t b;
    Kind kind;
    std::string id;
  };
  struct Arc {
    std::size_t from;
    std::size_t to;
    Label label;
  };
  /// Events one side can take at a node that the other side cannot match.
  struct SafetyViolation {
    std::size_t node;
    Label missing;
  };

  Presentation a;  // state-determined form of the first operand
  Presentation b;  // state-determined form of the second operand
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::optional<std::size_t>> parent_arc;  // breadth-first tree
  std::vector<SafetyViolation> safety_violations;
  std::vector<bool> on_cycle;

  /// Shortest joint execution reaching the node.
  EventSequence path_to(std::size_t node) const;
  /// A nonempty joint continuation from the node back to itself.
  EventSequence cycle_from(std::size_t node) const;
  bool acyclic() const;
  /// Length in events of the longest joint execution; empty when cyclic.
  std::optional<std::size_t> longest_execution() const;
  /// One longest joint execution; empty when cyclic.
  std::optional<EventSequence> a_longest_execution() const;
};

/// Throws not_akin. Operands that are not state-determined are converted.
ProductGraph joint_product(const PGraph& a, const PGraph& b);

/// Action pairs: every action of `a` must be available in `b`; observation
/// pairs: every observation of `b` must be available in `a`.
Verdict is_safe_on(const PGraph& a, const PGraph& b);
Verdict is_safe_on(const ProductGraph& product);
/// No joint execution can be pumped. A failing verdict carries a prefix
/// followed by one traversal of a repeatable cycle.
Verdict is_finite_on(const PGraph& a, const PGraph& b);
Verdict is_finite_on(const ProductGraph& product);

}  // namespace pgraph
