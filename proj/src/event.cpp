#include "pgraph/event.hpp"

#include <cctype>

#include "pgraph/error.hpp"

namespace pgraph {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational power_of_ten(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  Rational r(1, 1);
  r /= Rational(p);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::invalid_argument, "not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den)) throw fail();
    Rational r;
    if (r.set_str(std::string(num[0] == '+' ? num.substr(1) : num) + "/" + std::string(den), 10) != 0) throw fail();
    if (r.get_den() == 0) throw fail();
    r.canonicalize();
    return r;
  }

  // Decimal, optionally with exponent.
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw fail();
    std::string_view exp = text.substr(pos + 1);
    bool exp_negative = false;
    if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) {
      exp_negative = exp[0] == '-';
      exp = exp.substr(1);
    }
    if (!all_digits(exp) || exp.size() > 6) throw fail();
    long e = std::stol(std::string(exp));
    scale += exp_negative ? -e : e;
  }
  Rational r{mpz_class(mantissa, 10)};
  r *= power_of_ten(scale);
  if (negative) r = -r;
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::strong_ordering compare(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string_view to_string(Kind kind) {
  return kind == Kind::action ? "action" : "observation";
}

std::strong_ordering operator<=>(const EventValue& a, const EventValue& b) {
  if (auto c = a.value.index() <=> b.value.index(); c != 0) return c;
  if (a.is_id()) return a.id() <=> b.id();
  if (a.is_real()) return compare(a.real(), b.real());
  const auto& ta = a.tuple();
  const auto& tb = b.tuple();
  for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    if (auto c = ta[i] <=> tb[i]; c != 0) return c;
  }
  return ta.size() <=> tb.size();
}

bool operator==(const EventValue& a, const EventValue& b) { return (a <=> b) == 0; }

std::string to_string(const EventValue& e) {
  if (e.is_id()) return e.id();
  if (e.is_real()) return to_string(e.real());
  std::string out = "(";
  for (std::size_t i = 0; i < e.tuple().size(); ++i) {
    if (i) out += ",";
    out += to_string(e.tuple()[i]);
  }
  return out + ")";
}

std::strong_ordering operator<=>(const Event& a, const Event& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  return a.value <=> b.value;
}

bool operator==(const Event& a, const Event& b) { return (a <=> b) == 0; }

std::string to_string(const EventSequence& s) {
  if (s.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += to_string(s[i].value);
  }
  return out;
}

}  // namespace pgraph
