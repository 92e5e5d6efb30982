#pragma once

#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pgraph/pgraph.hpp"

namespace pgraph {

class EventMap;

struct IdentityMap {
  friend bool operator==(const IdentityMap&, const IdentityMap&) = default;
};

/// Explicit table from source events (identifiers or tuples) to nonempty labels.
struct FiniteTableMap {
  std::map<EventValue, Label> table;
  EventSpace codomain;

  friend bool operator==(const FiniteTableMap&, const FiniteTableMap&) = default;
};

/// y = slope * x + intercept.
struct Affine {
  Rational slope;
  Rational intercept;

  Rational operator()(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// Real-to-interval map: on each segment, x maps to [lower(x), upper(x)].
struct PiecewiseAffineMap {
  struct Segment {
    IntervalPiece domain;
    Affine lower;
    Affine upper;
  };
  std::vector<Segment> segments;
};

/// Real-to-label map constant on each segment (thresholding, quantization).
struct PiecewiseConstantMap {
  struct Segment {
    IntervalPiece domain;
    Label value;
  };
  std::vector<Segment> segments;
  EventSpace codomain;
};

/// Independent map per product coordinate.
struct ComponentwiseMap {
  std::vector<EventMap> components;
};

/// Stages applied first to last.
struct CompositeMap {
  std::vector<EventMap> stages;
};

/// Map from events of one kind to nonempty sets of events of the same kind.
class EventMap {
 public:
  using Variant = std::variant<IdentityMap, FiniteTableMap, PiecewiseAffineMap, PiecewiseConstantMap,
                               ComponentwiseMap, CompositeMap>;

  EventMap() : value_(IdentityMap{}) {}
  EventMap(IdentityMap m) : value_(m) {}
  /// The constructors below check totality, nonempty images and segment
  /// coverage, throwing invalid_argument or partial_map.
  EventMap(FiniteTableMap m);
  EventMap(PiecewiseAffineMap m);
  EventMap(PiecewiseConstantMap m);
  EventMap(ComponentwiseMap m);
  EventMap(CompositeMap m);

  const Variant& value() const { return value_; }
  bool is_identity() const { return std::holds_alternative<IdentityMap>(value()); }

 private:
  Variant value_;
};

/// Image h(l) = union of h(e) over e in l; labels keep the kind of `l`.
Label image(const EventMap& h, const Label& l);
/// Pre-image {e | h(e) meets target}, as a label of the source variant.
Label preimage(const EventMap& h, const Label& target, const EventSpace& domain);
/// Codomain of h applied to `domain`.
EventSpace codomain(const EventMap& h, const EventSpace& domain);
/// h(e) for one event.
Label image_of(const EventMap& h, const EventValue& e, Kind kind);

/// Throws partial_map when some event of `domain` has no image, or
/// type_mismatch when the map cannot read events of that shape.
void check_total(const EventMap& h, const EventSpace& domain);

enum class Injectivity { injective, not_injective, unknown };
std::string_view to_string(Injectivity i);
Injectivity is_injective(const EventMap& h, const EventSpace& domain);

/// h2 after h1. Finite tables fold into a table; other kinds become a
/// composite. Throws non_composable when the codomain of h1 cannot feed h2.
EventMap compose(const EventMap& h2, const EventMap& h1, const EventSpace& domain);

/// Pair of action and observation maps. An absent side is unmapped: using it
/// throws unmapped_kind.
struct LabelMap {
  std::optional<EventMap> action_map;
  std::optional<EventMap> observation_map;

  static LabelMap identity() { return {EventMap(), EventMap()}; }
  static LabelMap observations(EventMap m) { return {EventMap(), std::move(m)}; }
  static LabelMap actions(EventMap m) { return {std::move(m), EventMap()}; }

  const EventMap& side(Kind kind) const;
};

Label apply_to_label(const LabelMap& h, const Label& l);
/// Same vertices and edges with every label replaced by its image; the
/// event spaces become the codomains.
PGraph apply_to_pgraph(const LabelMap& h, const PGraph& g);
Label preimage(const LabelMap& h, const Label& target, const EventSpace& domain);
Injectivity is_injective(const LabelMap& h, const PGraph& g);
LabelMap compose(const LabelMap& h2, const LabelMap& h1, const PGraph& g);

}  // namespace pgraph
