#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace pgraph {

using Rational = mpq_class;

/// Parses "3", "-7/2", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
/// Canonical text: "3", "-7/2".
std::string to_string(const Rational& r);
std::strong_ordering compare(const Rational& a, const Rational& b);

enum class Kind { action, observation };

std::string_view to_string(Kind kind);
constexpr Kind opposite(Kind kind) {
  return kind == Kind::action ? Kind::observation : Kind::action;
}

/// A single event drawn from an event space: an identifier (finite spaces),
/// a real number (interval spaces) or a tuple (product spaces).
struct EventValue {
  using Tuple = std::vector<EventValue>;
  std::variant<std::string, Rational, Tuple> value;

  EventValue() = default;
  EventValue(std::string id) : value(std::move(id)) {}
  EventValue(const char* id) : value(std::string(id)) {}
  EventValue(Rational r) : value(std::move(r)) { std::get<Rational>(value).canonicalize(); }
  EventValue(Tuple t) : value(std::move(t)) {}

  bool is_id() const { return std::holds_alternative<std::string>(value); }
  bool is_real() const { return std::holds_alternative<Rational>(value); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(value); }
  const std::string& id() const { return std::get<std::string>(value); }
  const Rational& real() const { return std::get<Rational>(value); }
  const Tuple& tuple() const { return std::get<Tuple>(value); }
};

std::strong_ordering operator<=>(const EventValue& a, const EventValue& b);
bool operator==(const EventValue& a, const EventValue& b);
std::string to_string(const EventValue& e);

struct Event {
  Kind kind;
  EventValue value;
};

std::strong_ordering operator<=>(const Event& a, const Event& b);
bool operator==(const Event& a, const Event& b);

using EventSequence = std::vector<Event>;

std::string to_string(const EventSequence& s);

}  // namespace pgraph
