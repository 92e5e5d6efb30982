#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pgraph/coloring.hpp"
#include "pgraph/label_map.hpp"
#include "pgraph/planning.hpp"

/// JSON documents for graphs, problems, plans, label maps and coloring
/// instances. Parse errors are pgraph::Error with code syntax_error,
/// schema_error or validation_error and a JSON path ("$.edges[2].label") in
/// the message.
///
/// Rationals are written as JSON integers when integral and as "p/q" strings
/// otherwise. Decimal numbers in input are read exactly from their text, so
/// 0.1 means 1/10.
namespace pgraph::io {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

struct GraphDocument {
  PGraph graph;
  std::optional<std::set<std::size_t>> goal;
  std::optional<std::set<std::size_t>> term;
};

/// Reads JSON text keeping decimal literals exact.
Json parse_json(std::string_view text);

/// With `check` false the graph is returned without running validate(), so
/// callers can report every issue themselves.
GraphDocument graph_document_from_json(const Json& j, bool check = true);
Json to_json(const GraphDocument& doc);

GraphDocument parse_graph_document(std::string_view text, bool check = true);
std::string serialize(const GraphDocument& doc);

/// The typed readers demand the matching optional field.
PGraph parse_graph(std::string_view text);
PlanningProblem parse_problem(std::string_view text);
Plan parse_plan(std::string_view text);
std::string serialize(const PGraph& g);
std::string serialize(const PlanningProblem& w);
std::string serialize(const Plan& p);

/// An absent side in a map document means the identity on that kind.
LabelMap label_map_from_json(const Json& j);
Json to_json(const LabelMap& h);
LabelMap parse_label_map(std::string_view text);
std::string serialize(const LabelMap& h);

ColoringInstance coloring_from_json(const Json& j);
Json to_json(const ColoringInstance& c);
ColoringInstance parse_coloring(std::string_view text);
std::string serialize(const ColoringInstance& c);

Json to_json(const Label& l);
Label label_from_json(const Json& j, Kind kind);
Json to_json(const EventSpace& s);
Json to_json(const EventValue& e);
Json to_json(const EventSequence& s);
Json rational_to_json(const Rational& r);

/// {"holds", "witness", "detail"}.
Json verdict_json(bool holds, const EventSequence& witness, const std::string& detail);

/// JSON Schema (draft 2020-12) for graph and map documents.
std::string_view schema_text();

/// Reads a whole file; throws invalid_argument when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace pgraph::io
