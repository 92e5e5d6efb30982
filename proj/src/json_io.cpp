#include "pgraph/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "pgraph/error.hpp"

namespace pgraph::io {

namespace {

// Decimal literals are kept as tagged strings so no precision is lost.
constexpr char kNumberTag = '\x1f';

class ExactSax : public nlohmann::detail::json_sax_dom_parser<Json> {
 public:
  using Base = nlohmann::detail::json_sax_dom_parser<Json>;
  explicit ExactSax(Json& root) : Base(root, true) {}

  bool number_float(Json::number_float_t /*value*/, const Json::string_t& text) {
    Json::string_t tagged = kNumberTag + text;
    return Base::string(tagged);
  }
};

bool is_tagged_number(const Json& j) {
  return j.is_string() && !j.get_ref<const std::string&>().empty() && j.get_ref<const std::string&>()[0] == kNumberTag;
}

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::schema_error, path + ": " + what);
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::validation_error, path + ": " + what);
}

std::string type_name(const Json& j) {
  if (is_tagged_number(j)) return "number";
  return j.type_name();
}

// A JSON value together with its location.
struct Node {
  const Json& j;
  std::string path;

  const Json& object() const {
    if (!j.is_object()) schema(path, "expected an object, found " + type_name(j));
    return j;
  }
  const Json& array() const {
    if (!j.is_array()) schema(path, "expected an array, found " + type_name(j));
    return j;
  }
  std::string string() const {
    if (!j.is_string() || is_tagged_number(j)) schema(path, "expected a string, found " + type_name(j));
    return j.get<std::string>();
  }
  bool boolean() const {
    if (!j.is_boolean()) schema(path, "expected a boolean, found " + type_name(j));
    return j.get<bool>();
  }
  bool has(const char* key) const { return object().contains(key); }
  Node at(const char* key) const {
    if (!has(key)) schema(path, std::string("missing field '") + key + "'");
    return {j.at(key), path + "." + key};
  }
  std::optional<Node> get(const char* key) const {
    if (!has(key)) return std::nullopt;
    return Node{j.at(key), path + "." + key};
  }
  std::size_t size() const { return array().size(); }
  Node operator[](std::size_t i) const { return {array().at(i), path + "[" + std::to_string(i) + "]"}; }

  Rational rational() const {
    try {
      if (j.is_number_integer()) return parse_rational(j.dump());
      if (is_tagged_number(j)) return parse_rational(j.get_ref<const std::string&>().substr(1));
      if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      schema(path, "not a rational number: " + j.dump());
    }
    schema(path, "expected a number, found " + type_name(j));
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].string());
    return out;
  }
};

// Library errors raised while building objects become validation errors here.
template <class F>
auto validated(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema_error || e.code() == ErrorCode::validation_error) throw;
    invalid(path, e.what());
  }
}

void check_version(const Node& root, bool required) {
  auto v = root.get("format_version");
  if (!v) {
    if (required) schema(root.path, "missing field 'format_version'");
    return;
  }
  if (!v->j.is_number_integer() || v->j.get<long long>() != format_version) {
    schema(v->path, "unsupported format_version " + v->j.dump() + " (expected " + std::to_string(format_version) + ")");
  }
}

// ---------------------------------------------------------------- spaces

EventSpace space_from(const Node& n) {
  auto type = n.at("type").string();
  if (type == "finite") return EventSpace::finite(n.at("events").strings());
  if (type == "real") return EventSpace::real();
  if (type == "product") {
    auto comps = n.at("components");
    std::vector<EventSpace> spaces;
    for (std::size_t i = 0; i < comps.size(); ++i) spaces.push_back(space_from(comps[i]));
    if (spaces.empty()) schema(comps.path, "a product space needs at least one component");
    return EventSpace::product(std::move(spaces));
  }
  schema(n.path + ".type", "unknown space type '" + type + "'");
}

// ---------------------------------------------------------------- labels

IntervalPiece piece_from(const Node& n) {
  n.object();
  if (auto p = n.get("point")) return IntervalPiece::point(p->rational());
  IntervalPiece piece;
  if (auto lo = n.get("lo"); lo && !lo->j.is_null()) {
    piece.lo = lo->rational();
    if (auto c = n.get("lo_closed")) piece.lo_closed = c->boolean();
  }
  if (auto hi = n.get("hi"); hi && !hi->j.is_null()) {
    piece.hi = hi->rational();
    if (auto c = n.get("hi_closed")) piece.hi_closed = c->boolean();
  }
  return piece;
}

Json piece_json(const IntervalPiece& p) {
  if (p.lo && p.hi && *p.lo == *p.hi && p.lo_closed && p.hi_closed) return Json{{"point", rational_to_json(*p.lo)}};
  Json out = Json::object();
  out["lo"] = p.lo ? rational_to_json(*p.lo) : Json(nullptr);
  if (p.lo) out["lo_closed"] = p.lo_closed;
  out["hi"] = p.hi ? rational_to_json(*p.hi) : Json(nullptr);
  if (p.hi) out["hi_closed"] = p.hi_closed;
  return out;
}

Label label_from(const Node& n, Kind kind) {
  const auto& obj = n.object();
  if (obj.size() != 1 && !(obj.size() == 2 && obj.contains("product") && obj.contains("arity"))) {
    schema(n.path, "a label has exactly one of 'finite', 'intervals', 'product'");
  }
  if (auto f = n.get("finite")) return Label::finite(kind, f->strings());
  if (auto iv = n.get("intervals")) {
    std::vector<IntervalPiece> pieces;
    for (std::size_t i = 0; i < iv->size(); ++i) pieces.push_back(piece_from((*iv)[i]));
    return validated(iv->path, [&] { return Label(kind, IntervalLabel::from_pieces(pieces)); });
  }
  if (auto p = n.get("product")) {
    std::vector<ProductLabel::Term> terms;
    for (std::size_t t = 0; t < p->size(); ++t) {
      auto term = (*p)[t];
      ProductLabel::Term labels;
      for (std::size_t k = 0; k < term.size(); ++k) labels.push_back(label_from(term[k], kind));
      terms.push_back(std::move(labels));
    }
    std::size_t arity = 0;
    if (auto a = n.get("arity")) {
      if (!a->j.is_number_unsigned()) schema(a->path, "expected a non-negative integer");
      arity = a->j.get<std::size_t>();
    } else if (!terms.empty()) {
      arity = terms.front().size();
    } else {
      schema(n.path, "an empty product label needs 'arity'");
    }
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (terms[t].size() != arity) {
        schema(p->path + "[" + std::to_string(t) + "]", "term has " + std::to_string(terms[t].size()) +
                                                          " components, expected " + std::to_string(arity));
      }
    }
    return validated(p->path, [&] { return Label(kind, ProductLabel(arity, std::move(terms))); });
  }
  schema(n.path, "a label has exactly one of 'finite', 'intervals', 'product'");
}

// Finite images may be written as a bare array of identifiers.
Label image_from(const Node& n, Kind kind) {
  if (n.j.is_array()) return Label::finite(kind, n.strings());
  return label_from(n, kind);
}

Json image_json(const Label& l) {
  if (l.variant() == LabelVariant::finite) return Json(l.as_finite().events());
  return to_json(l);
}

EventValue event_from(const Node& n) {
  if (n.j.is_array()) {
    EventValue::Tuple t;
    for (std::size_t i = 0; i < n.size(); ++i) t.push_back(event_from(n[i]));
    return EventValue(std::move(t));
  }
  if (n.j.is_object()) return EventValue(n.at("real").rational());
  if (n.j.is_number() || is_tagged_number(n.j)) return EventValue(n.rational());
  return EventValue(n.string());
}

// ---------------------------------------------------------------- maps

EventMap event_map_from(const Node& n, Kind kind) {
  auto k = n.at("kind").string();
  if (k == "identity") return EventMap();
  if (k == "finite") {
    FiniteTableMap m;
    if (auto c = n.get("codomain")) m.codomain = space_from(*c);
    if (auto t = n.get("table")) {
      for (const auto& [key, value] : t->object().items()) {
        m.table.emplace(EventValue(key), image_from(Node{value, t->path + "." + key}, kind));
      }
    }
    if (auto es = n.get("entries")) {
      for (std::size_t i = 0; i < es->size(); ++i) {
        auto e = (*es)[i];
        auto from = event_from(e.at("from"));
        if (!m.table.emplace(from, image_from(e.at("to"), kind)).second) {
          invalid(e.path, "repeated source event " + to_string(from));
        }
      }
    }
    if (!n.has("table") && !n.has("entries")) schema(n.path, "a finite map needs 'table' or 'entries'");
    return validated(n.path, [&] { return EventMap(std::move(m)); });
  }
  if (k == "piecewise_affine") {
    PiecewiseAffineMap m;
    auto segs = n.at("segments");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      auto s = segs[i];
      auto affine = [&](const char* key) {
        auto p = s.at(key);
        if (p.size() != 2) schema(p.path, "expected [slope, intercept]");
        return Affine{p[0].rational(), p[1].rational()};
      };
      m.segments.push_back({piece_from(s), affine("p1"), affine("p2")});
    }
    return validated(n.path, [&] { return EventMap(std::move(m)); });
  }
  if (k == "piecewise_constant") {
    PiecewiseConstantMap m;
    if (auto c = n.get("codomain")) m.codomain = space_from(*c);
    auto segs = n.at("segments");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      auto s = segs[i];
      m.segments.push_back({piece_from(s), image_from(s.at("value"), kind)});
    }
    return validated(n.path, [&] { return EventMap(std::move(m)); });
  }
  if (k == "componentwise" || k == "composite") {
    auto parts = n.at(k == "composite" ? "stages" : "components");
    std::vector<EventMap> maps;
    for (std::size_t i = 0; i < parts.size(); ++i) maps.push_back(event_map_from(parts[i], kind));
    if (k == "composite") return validated(n.path, [&] { return EventMap(CompositeMap{std::move(maps)}); });
    return validated(n.path, [&] { return EventMap(ComponentwiseMap{std::move(maps)}); });
  }
  schema(n.path + ".kind", "unknown map kind '" + k + "'");
}

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Json event_map_json(const EventMap& h) {
  return std::visit(
      overloaded{
          [](const IdentityMap&) { return Json{{"kind", "identity"}}; },
          [](const FiniteTableMap& m) {
            Json out{{"kind", "finite"}, {"codomain", to_json(m.codomain)}};
            bool by_id = std::all_of(m.table.begin(), m.table.end(), [](const auto& kv) { return kv.first.is_id(); });
            if (by_id) {
              Json table = Json::object();
              for (const auto& [from, to] : m.table) table[from.id()] = image_json(to);
              out["table"] = std::move(table);
            } else {
              Json entries = Json::array();
              for (const auto& [from, to] : m.table) entries.push_back({{"from", to_json(from)}, {"to", image_json(to)}});
              out["entries"] = std::move(entries);
            }
            return out;
          },
          [](const PiecewiseAffineMap& m) {
            Json segs = Json::array();
            for (const auto& s : m.segments) {
              Json j = piece_json(s.domain);
              j["p1"] = {rational_to_json(s.lower.slope), rational_to_json(s.lower.intercept)};
              j["p2"] = {rational_to_json(s.upper.slope), rational_to_json(s.upper.intercept)};
              segs.push_back(std::move(j));
            }
            return Json{{"kind", "piecewise_affine"}, {"segments", std::move(segs)}};
          },
          [](const PiecewiseConstantMap& m) {
            Json segs = Json::array();
            for (const auto& s : m.segments) {
              Json j = piece_json(s.domain);
              j["value"] = image_json(s.value);
              segs.push_back(std::move(j));
            }
            return Json{{"kind", "piecewise_constant"}, {"codomain", to_json(m.codomain)}, {"segments", std::move(segs)}};
          },
          [](const ComponentwiseMap& m) {
            Json parts = Json::array();
            for (const auto& c : m.components) parts.push_back(event_map_json(c));
            return Json{{"kind", "componentwise"}, {"components", std::move(parts)}};
          },
          [](const CompositeMap& m) {
            Json parts = Json::array();
            for (const auto& c : m.stages) parts.push_back(event_map_json(c));
            return Json{{"kind", "composite"}, {"stages", std::move(parts)}};
          },
      },
      h.value());
}

std::set<std::size_t> vertex_set_from(const Node& n, const PGraph& g) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto id = n[i].string();
    auto v = g.find(id);
    if (!v) invalid(n[i].path, "unknown vertex '" + id + "'");
    out.insert(*v);
  }
  return out;
}

Json vertex_set_json(const std::set<std::size_t>& vs, const PGraph& g) {
  Json out = Json::array();
  for (auto v : vs) out.push_back(g.vertex(v).id);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------- public

Json parse_json(std::string_view text) {
  Json root;
  ExactSax sax(root);
  try {
    Json::sax_parse(text, &sax);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::syntax_error, std::string("$: ") + e.what());
  }
  return root;
}

Json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return Json(r.get_num().get_si());
  return Json(to_string(r));
}

Json to_json(const EventValue& e) {
  if (e.is_id()) return Json(e.id());
  if (e.is_real()) {
    if (e.real().get_den() == 1 && e.real().get_num().fits_slong_p()) return rational_to_json(e.real());
    return Json{{"real", to_string(e.real())}};
  }
  Json out = Json::array();
  for (const auto& c : e.tuple()) out.push_back(to_json(c));
  return out;
}

Json to_json(const EventSequence& s) {
  Json out = Json::array();
  for (const auto& e : s) out.push_back({{"kind", std::string(to_string(e.kind))}, {"value", to_json(e.value)}});
  return out;
}

Json to_json(const EventSpace& s) {
  switch (s.type) {
    case EventSpace::Type::finite:
      return Json{{"type", "finite"}, {"events", s.events}};
    case EventSpace::Type::real:
      return Json{{"type", "real"}};
    case EventSpace::Type::product: {
      Json comps = Json::array();
      for (const auto& c : s.components) comps.push_back(to_json(c));
      return Json{{"type", "product"}, {"components", std::move(comps)}};
    }
  }
  return {};
}

Json to_json(const Label& l) {
  switch (l.variant()) {
    case LabelVariant::finite:
      return Json{{"finite", l.as_finite().events()}};
    case LabelVariant::interval: {
      Json pieces = Json::array();
      for (const auto& p : l.as_interval().pieces()) pieces.push_back(piece_json(p));
      return Json{{"intervals", std::move(pieces)}};
    }
    case LabelVariant::product: {
      const auto& p = l.as_product();
      Json terms = Json::array();
      for (const auto& t : p.terms()) {
        Json term = Json::array();
        for (const auto& c : t) term.push_back(to_json(c));
        terms.push_back(std::move(term));
      }
      Json out{{"product", std::move(terms)}};
      if (p.terms().empty()) out["arity"] = p.arity();
      return out;
    }
  }
  return {};
}

Label label_from_json(const Json& j, Kind kind) { return label_from(Node{j, "$"}, kind); }

GraphDocument graph_document_from_json(const Json& j, bool check) {
  Node root{j, "$"};
  root.object();
  check_version(root, true);
  auto spaces = root.at("spaces");
  PGraph g(space_from(spaces.at("action")), space_from(spaces.at("observation")));

  auto vertices = root.at("vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto v = vertices[i];
    auto id = v.at("id").string();
    auto kind = v.at("kind").string();
    if (kind != "action" && kind != "observation") schema(v.path + ".kind", "expected \"action\" or \"observation\"");
    if (g.find(id)) invalid(v.path + ".id", "duplicate vertex id '" + id + "'");
    g.add_vertex(id, kind == "action" ? Kind::action : Kind::observation);
  }

  auto edges = root.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    auto from_id = e.at("from").string();
    auto to_id = e.at("to").string();
    auto from = g.find(from_id);
    auto to = g.find(to_id);
    if (!from) invalid(e.path + ".from", "unknown vertex '" + from_id + "'");
    if (!to) invalid(e.path + ".to", "unknown vertex '" + to_id + "'");
    Kind kind = g.vertex(*from).kind;
    auto label = label_from(e.at("label"), kind);
    if (check) {
      if (g.vertex(*to).kind == kind) invalid(e.path, "edge joins two " + std::string(to_string(kind)) + " vertices");
      if (is_empty(label)) invalid(e.path + ".label", "empty label");
      if (auto why = label_space_mismatch(label, g.space(kind))) {
        invalid(e.path + ".label", std::string(to_string(kind)) + " label outside the " +
                                       std::string(to_string(kind)) + " space: " + *why);
      }
    }
    validated(e.path, [&] { return g.add_edge(*from, *to, std::move(label)); });
  }

  auto initial = root.at("initial");
  // Document order is kept so serialization round-trips.
  for (std::size_t i = 0; i < initial.size(); ++i) {
    auto id = initial[i].string();
    auto v = g.find(id);
    if (!v) invalid(initial[i].path, "unknown vertex '" + id + "'");
    g.add_initial(*v);
  }

  GraphDocument doc{std::move(g), std::nullopt, std::nullopt};
  if (auto goal = root.get("goal")) doc.goal = vertex_set_from(*goal, doc.graph);
  if (auto term = root.get("term")) doc.term = vertex_set_from(*term, doc.graph);
  if (check) {
    auto report = validate(doc.graph);
    if (!report.ok()) invalid("$", report.issues.front().code + ": " + report.issues.front().detail);
  }
  return doc;
}

Json to_json(const GraphDocument& doc) {
  const auto& g = doc.graph;
  Json out{{"format_version", format_version},
           {"spaces", {{"action", to_json(g.action_space())}, {"observation", to_json(g.observation_space())}}}};
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"id", v.id}, {"kind", std::string(to_string(v.kind))}});
  out["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"from", g.vertex(e.from).id}, {"to", g.vertex(e.to).id}, {"label", to_json(e.label)}});
  }
  out["edges"] = std::move(edges);
  Json initial = Json::array();
  for (auto v : g.initial()) initial.push_back(g.vertex(v).id);
  out["initial"] = std::move(initial);
  if (doc.goal) out["goal"] = vertex_set_json(*doc.goal, g);
  if (doc.term) out["term"] = vertex_set_json(*doc.term, g);
  return out;
}

GraphDocument parse_graph_document(std::string_view text, bool check) {
  return graph_document_from_json(parse_json(text), check);
}

std::string serialize(const GraphDocument& doc) { return dump(to_json(doc)); }

PGraph parse_graph(std::string_view text) { return parse_graph_document(text).graph; }

PlanningProblem parse_problem(std::string_view text) {
  auto doc = parse_graph_document(text);
  if (!doc.goal) schema("$", "missing field 'goal' (a planning problem needs a goal region)");
  return {std::move(doc.graph), *doc.goal};
}

Plan parse_plan(std::string_view text) {
  auto doc = parse_graph_document(text);
  if (!doc.term) schema("$", "missing field 'term' (a plan needs a termination region)");
  return {std::move(doc.graph), *doc.term};
}

std::string serialize(const PGraph& g) { return serialize(GraphDocument{g, std::nullopt, std::nullopt}); }
std::string serialize(const PlanningProblem& w) { return serialize(GraphDocument{w.graph, w.goal, std::nullopt}); }
std::string serialize(const Plan& p) { return serialize(GraphDocument{p.graph, std::nullopt, p.term}); }

LabelMap label_map_from_json(const Json& j) {
  Node root{j, "$"};
  root.object();
  check_version(root, false);
  for (const auto& [key, value] : j.items()) {
    if (key != "format_version" && key != "action_map" && key != "observation_map") {
      schema("$." + key, "unknown field in a map document");
    }
  }
  LabelMap h = LabelMap::identity();
  if (auto a = root.get("action_map")) h.action_map = event_map_from(*a, Kind::action);
  if (auto y = root.get("observation_map")) h.observation_map = event_map_from(*y, Kind::observation);
  return h;
}

Json to_json(const LabelMap& h) {
  Json out{{"format_version", format_version}};
  if (h.action_map) out["action_map"] = event_map_json(*h.action_map);
  if (h.observation_map) out["observation_map"] = event_map_json(*h.observation_map);
  return out;
}

LabelMap parse_label_map(std::string_view text) { return label_map_from_json(parse_json(text)); }
std::string serialize(const LabelMap& h) { return dump(to_json(h)); }

ColoringInstance coloring_from_json(const Json& j) {
  Node root{j, "$"};
  root.object();
  check_version(root, false);
  ColoringInstance c;
  c.vertices = root.at("vertices").strings();
  auto edges = root.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    if (e.size() != 2) schema(e.path, "an edge is a pair of vertex ids");
    c.edges.emplace_back(e[0].string(), e[1].string());
  }
  validated("$", [&] {
    check_simple(c);
    return 0;
  });
  return c;
}

Json to_json(const ColoringInstance& c) {
  Json edges = Json::array();
  for (const auto& [a, b] : c.edges) edges.push_back({a, b});
  return Json{{"format_version", format_version}, {"vertices", c.vertices}, {"edges", std::move(edges)}};
}

ColoringInstance parse_coloring(std::string_view text) { return coloring_from_json(parse_json(text)); }
std::string serialize(const ColoringInstance& c) { return dump(to_json(c)); }

Json verdict_json(bool holds, const EventSequence& witness, const std::string& detail) {
  return Json{{"holds", holds}, {"witness", to_json(witness)}, {"detail", detail}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pgraph::io
