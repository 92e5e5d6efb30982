#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgraph/label.hpp"

namespace pgraph {

/// Declared universe of actions or observations.
struct EventSpace {
  enum class Type { finite, real, product };

  Type type = Type::finite;
  std::vector<std::string> events;     // finite: sorted, unique
  std::vector<EventSpace> components;  // product

  static EventSpace finite(std::vector<std::string> events);
  static EventSpace real() { return EventSpace{Type::real, {}, {}}; }
  static EventSpace product(std::vector<EventSpace> components);

  friend bool operator==(const EventSpace&, const EventSpace&) = default;
};

/// The label holding every event of the space.
Label full_label(const EventSpace& space, Kind kind);
bool space_contains(const EventSpace& space, const EventValue& e);
/// Reason the label cannot live in the space, if any.
std::optional<std::string> label_space_mismatch(const Label& label, const EventSpace& space);
/// Every event, when the space is finitely enumerable.
std::optional<std::vector<EventValue>> enumerate_space(const EventSpace& space);
std::string to_string(const EventSpace& space);

struct Vertex {
  std::string id;
  Kind kind;
};

struct Edge {
  std::size_t from;
  std::size_t to;
  Label label;
};

/// Finite bipartite edge-labelled digraph with a designated initial set.
class PGraph {
 public:
  PGraph() = default;
  PGraph(EventSpace action_space, EventSpace observation_space)
      : action_space_(std::move(action_space)), observation_space_(std::move(observation_space)) {}

  std::size_t add_vertex(std::string id, Kind kind);
  std::size_t add_edge(std::size_t from, std::size_t to, Label label);
  std::size_t add_edge(const std::string& from, const std::string& to, Label label);
  void add_initial(std::size_t v);
  void add_initial(const std::string& id);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::size_t>& initial() const { return initial_; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<std::size_t> find(const std::string& id) const;
  /// Throws invalid_argument for an unknown id.
  std::size_t index(const std::string& id) const;
  bool is_sink(std::size_t v) const { return out_.at(v).empty(); }

  const EventSpace& space(Kind kind) const { return kind == Kind::action ? action_space_ : observation_space_; }
  const EventSpace& action_space() const { return action_space_; }
  const EventSpace& observation_space() const { return observation_space_; }
  void set_space(Kind kind, EventSpace space);

  /// Kind of the initial vertices; throws invalid_graph if there are none.
  Kind initial_kind() const;

 private:
  EventSpace action_space_;
  EventSpace observation_space_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> initial_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

struct ValidationIssue {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(std::string_view code) const;
};

ValidationReport validate(const PGraph& g);
/// Throws validation_error carrying the first issue.
void require_valid(const PGraph& g);

/// Vertices reachable from the initial set.
std::vector<bool> reachable_vertices(const PGraph& g);

/// Whether the two graphs are both action-first or both observation-first.
bool akin(const PGraph& a, const PGraph& b);

bool is_execution(const PGraph& g, const EventSequence& s);
/// The vertices an execution can end at; empty when s is not an execution.
std::vector<std::size_t> reached_vertices(const PGraph& g, const EventSequence& s);

/// Candidate events to try at a set of current vertices, given their out-labels.
using LabelSampler = std::function<std::vector<EventValue>(std::span<const Label>)>;

/// One representative per refined class of the out-labels.
LabelSampler refinement_sampler();
/// A fixed probe set per kind built from every label of the given graphs:
/// all enumerable elements, every interval endpoint, midpoints and points
/// beyond the extremes. Comparing graphs with a shared probe sampler is exact
/// for finite labels and signature-complete for intervals.
LabelSampler probe_sampler(std::span<const PGraph* const> graphs);

std::set<EventSequence> executions_up_to(const PGraph& g, std::size_t depth, const LabelSampler& sampler);

/// Vertex-disjoint union; vertex ids are prefixed "0." and "1." when the
/// inputs share an id. Throws not_akin.
struct UnionResult {
  PGraph graph;
  std::vector<std::size_t> from_a;
  std::vector<std::size_t> from_b;
};
UnionResult disjoint_union(const PGraph& a, const PGraph& b);
PGraph pgraph_union(const PGraph& a, const PGraph& b);

struct Verdict {
  bool holds = true;
  EventSequence witness;
  std::string detail;
};

}  // namespace pgraph
