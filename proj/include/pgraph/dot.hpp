#pragma once

#include <set>
#include <string>

#include "pgraph/pgraph.hpp"

namespace pgraph {

/// Graphviz text: action vertices as boxes, observation vertices as
/// ellipses, initial vertices bold, `marked` vertices double-bordered.
std::string to_dot(const PGraph& g, const std::set<std::size_t>& marked = {});

}  // namespace pgraph
