#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pgraph/pgraph.hpp"

namespace pgraph {

/// Simple undirected graph; the edge order is the one the reduction chains.
struct ColoringInstance {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

/// Throws invalid_argument for self-loops, repeated edges or unknown vertices.
void check_simple(const ColoringInstance& g);

/// Filter whose smallest non-destructive observation image equals the
/// chromatic number of g. Per edge k joining v and w: action vertices
/// ai_ek, as_ek, at_ek emitting emit0, emit1, emit2; observation vertices
/// oi_ek, os_ek, ot_ek; oi_ek moves to as_ek on {v} and to at_ek on {w};
/// os_ek and ot_ek move on {v,w} to the next edge's ai. Throws empty_graph.
PGraph reduce_from_3coloring(const ColoringInstance& g);

/// Exact chromatic number by backtracking over k = 1, 2, ...
std::size_t chromatic_number(const ColoringInstance& g);
/// A proper coloring with the fewest colors, indexed like g.vertices.
std::vector<int> optimal_coloring(const ColoringInstance& g);

}  // namespace pgraph
