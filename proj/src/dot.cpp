#include "pgraph/dot.hpp"

#include <algorithm>
#include <sstream>

namespace pgraph {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const PGraph& g, const std::set<std::size_t>& marked) {
  std::ostringstream out;
  out << "digraph pgraph {\n  rankdir=LR;\n";
  const auto& init = g.initial();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = g.vertex(v);
    out << "  " << quoted(vx.id) << " [shape=" << (vx.kind == Kind::action ? "box" : "ellipse");
    if (std::find(init.begin(), init.end(), v) != init.end()) out << ", style=bold";
    if (marked.count(v)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << quoted(g.vertex(e.from).id) << " -> " << quoted(g.vertex(e.to).id)
        << " [label=" << quoted(to_string(e.label)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pgraph
