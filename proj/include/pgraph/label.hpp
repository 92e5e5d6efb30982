#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pgraph/event.hpp"

namespace pgraph {

class Label;

/// Explicitly enumerated set of event identifiers. Kept sorted and unique.
class FiniteLabel {
 public:
  FiniteLabel() = default;
  explicit FiniteLabel(std::vector<std::string> events);

  const std::vector<std::string>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }
  bool contains(const std::string& id) const;

  friend bool operator==(const FiniteLabel&, const FiniteLabel&) = default;
  friend auto operator<=>(const FiniteLabel&, const FiniteLabel&) = default;

 private:
  std::vector<std::string> events_;
};

/// One maximal connected piece of a subset of the real line. A missing bound
/// means the piece is unbounded on that side.
struct IntervalPiece {
  std::optional<Rational> lo;
  bool lo_closed = false;
  std::optional<Rational> hi;
  bool hi_closed = false;

  static IntervalPiece point(const Rational& x) { return {x, true, x, true}; }
  static IntervalPiece whole() { return {}; }
};

/// Finite union of real intervals stored as a sweep structure: n strictly
/// increasing endpoints, n + 1 interval flags (the gaps below, between and
/// above the endpoints) and n endpoint flags.
///
/// Always canonical: an endpoint whose flag agrees with both neighbouring
/// interval flags is dropped, so structural equality is set equality.
class IntervalLabel {
 public:
  IntervalLabel() : interval_flags_{false} {}
  IntervalLabel(std::vector<Rational> endpoints, std::vector<bool> interval_flags,
                std::vector<bool> endpoint_flags);

  static IntervalLabel empty_set() { return IntervalLabel(); }
  static IntervalLabel real_line();
  static IntervalLabel point(const Rational& x);
  static IntervalLabel from_piece(const IntervalPiece& piece);
  static IntervalLabel from_pieces(std::span<const IntervalPiece> pieces);

  const std::vector<Rational>& endpoints() const { return endpoints_; }
  const std::vector<bool>& interval_flags() const { return interval_flags_; }
  const std::vector<bool>& endpoint_flags() const { return endpoint_flags_; }

  bool empty() const;
  bool contains(const Rational& x) const;
  std::vector<IntervalPiece> pieces() const;

  friend bool operator==(const IntervalLabel& a, const IntervalLabel& b);
  friend std::strong_ordering operator<=>(const IntervalLabel& a, const IntervalLabel& b);

 private:
  void canonicalize();

  std::vector<Rational> endpoints_;
  std::vector<bool> interval_flags_;
  std::vector<bool> endpoint_flags_;
};

/// Union of Cartesian products of sub-labels; every term has the same arity.
/// Canonical form is derived from the coarsest per-dimension partition that
/// the represented set admits, so structurally equal means set-equal.
class ProductLabel {
 public:
  using Term = std::vector<Label>;

  explicit ProductLabel(std::size_t arity) : arity_(arity) {}
  ProductLabel(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend bool operator==(const ProductLabel& a, const ProductLabel& b);
  friend std::strong_ordering operator<=>(const ProductLabel& a, const ProductLabel& b);

 private:
  friend class ProductGrid;
  ProductLabel(std::size_t arity, std::vector<Term> terms, bool already_canonical);

  std::size_t arity_;
  std::vector<Term> terms_;
};

enum class LabelVariant { finite, interval, product };

std::string_view to_string(LabelVariant variant);

/// A symbolic set of events of one kind.
class Label {
 public:
  using Variant = std::variant<FiniteLabel, IntervalLabel, ProductLabel>;

  Label(Kind kind, FiniteLabel l) : kind_(kind), value_(std::move(l)) {}
  Label(Kind kind, IntervalLabel l) : kind_(kind), value_(std::move(l)) {}
  /// Components are relabelled to `kind` when they differ.
  Label(Kind kind, ProductLabel l);

  static Label finite(Kind kind, std::vector<std::string> events) {
    return Label(kind, FiniteLabel(std::move(events)));
  }

  Kind kind() const { return kind_; }
  LabelVariant variant() const { return static_cast<LabelVariant>(value_.index()); }
  const Variant& value() const { return value_; }

  const FiniteLabel& as_finite() const { return std::get<FiniteLabel>(value_); }
  const IntervalLabel& as_interval() const { return std::get<IntervalLabel>(value_); }
  const ProductLabel& as_product() const { return std::get<ProductLabel>(value_); }

  /// Same kind and variant, relabelled to `kind` (used for product components).
  Label with_kind(Kind kind) const;

  friend bool operator==(const Label& a, const Label& b);
  friend std::strong_ordering operator<=>(const Label& a, const Label& b);

 private:
  Kind kind_;
  Variant value_;
};

Label unite(const Label& a, const Label& b);
Label intersect(const Label& a, const Label& b);
Label subtract(const Label& a, const Label& b);
bool is_empty(const Label& a);
bool contains(const Label& a, const EventValue& e);
/// Deterministic member of a non-empty label. Intervals: smallest included
/// endpoint, else midpoint of the leftmost bounded piece, else one unit inside
/// an unbounded piece. Finite: least identifier. Product: componentwise on the
/// first term.
EventValue representative(const Label& a);

/// Pairwise disjoint blocks covering the union of the inputs, with constant
/// input-membership signature inside each block. Sorted, no empty blocks.
std::vector<Label> refine_labels(std::span<const Label> labels);
/// The generic union/intersection/difference sweep, valid for any variant.
std::vector<Label> refine_labels_generic(std::span<const Label> labels);

/// Empty label of the same kind, variant and arity as `like`.
Label empty_like(const Label& like);
Label unite_all(std::span<const Label> labels, const Label& like);
bool is_subset(const Label& a, const Label& b);
bool set_equal(const Label& a, const Label& b);
bool intersects(const Label& a, const Label& b);
bool is_singleton(const Label& a);
/// All members, when the label is finitely enumerable (finite labels, isolated
/// points, products of enumerable components).
std::optional<std::vector<EventValue>> enumerate_elements(const Label& a);
/// The label {e} with the variant implied by the value's shape.
Label singleton(Kind kind, const EventValue& e);

std::string to_string(const Label& a);

}  // namespace pgraph
