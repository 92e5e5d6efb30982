#include "pgraph/label.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pgraph/error.hpp"

namespace pgraph {

// ---------------------------------------------------------------- finite

FiniteLabel::FiniteLabel(std::vector<std::string> events) : events_(std::move(events)) {
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

bool FiniteLabel::contains(const std::string& id) const {
  return std::binary_search(events_.begin(), events_.end(), id);
}

// ---------------------------------------------------------------- interval

IntervalLabel::IntervalLabel(std::vector<Rational> endpoints, std::vector<bool> interval_flags,
                             std::vector<bool> endpoint_flags)
    : endpoints_(std::move(endpoints)),
      interval_flags_(std::move(interval_flags)),
      endpoint_flags_(std::move(endpoint_flags)) {
  if (interval_flags_.size() != endpoints_.size() + 1 || endpoint_flags_.size() != endpoints_.size()) {
    throw Error(ErrorCode::invalid_argument, "interval label flag counts do not match endpoints");
  }
  // GMP compares for equality only in lowest terms.
  for (auto& x : endpoints_) x.canonicalize();
  for (std::size_t i = 1; i < endpoints_.size(); ++i) {
    if (!(endpoints_[i - 1] < endpoints_[i])) {
      throw Error(ErrorCode::invalid_argument, "interval label endpoints must be strictly increasing");
    }
  }
  canonicalize();
}

void IntervalLabel::canonicalize() {
  std::vector<Rational> e;
  std::vector<bool> iflags{interval_flags_[0]};
  std::vector<bool> eflags;
  for (std::size_t j = 0; j < endpoints_.size(); ++j) {
    bool redundant = interval_flags_[j] == endpoint_flags_[j] && endpoint_flags_[j] == interval_flags_[j + 1];
    if (redundant) continue;
    e.push_back(endpoints_[j]);
    eflags.push_back(endpoint_flags_[j]);
    iflags.push_back(interval_flags_[j + 1]);
  }
  endpoints_ = std::move(e);
  interval_flags_ = std::move(iflags);
  endpoint_flags_ = std::move(eflags);
}

IntervalLabel IntervalLabel::real_line() { return IntervalLabel({}, {true}, {}); }

IntervalLabel IntervalLabel::point(const Rational& x) { return IntervalLabel({x}, {false, false}, {true}); }

IntervalLabel IntervalLabel::from_piece(const IntervalPiece& given) {
  IntervalPiece p = given;
  if (p.lo) p.lo->canonicalize();
  if (p.hi) p.hi->canonicalize();
  if (p.lo && p.hi) {
    if (*p.lo == *p.hi) return (p.lo_closed && p.hi_closed) ? point(*p.lo) : empty_set();
    if (*p.lo > *p.hi) return empty_set();
    return IntervalLabel({*p.lo, *p.hi}, {false, true, false}, {p.lo_closed, p.hi_closed});
  }
  if (p.lo) return IntervalLabel({*p.lo}, {false, true}, {p.lo_closed});
  if (p.hi) return IntervalLabel({*p.hi}, {true, false}, {p.hi_closed});
  return real_line();
}

bool IntervalLabel::empty() const {
  return std::none_of(interval_flags_.begin(), interval_flags_.end(), [](bool b) { return b; }) &&
         std::none_of(endpoint_flags_.begin(), endpoint_flags_.end(), [](bool b) { return b; });
}

bool IntervalLabel::contains(const Rational& x) const {
  auto it = std::lower_bound(endpoints_.begin(), endpoints_.end(), x);
  auto idx = static_cast<std::size_t>(it - endpoints_.begin());
  if (idx < endpoints_.size() && endpoints_[idx] == x) return endpoint_flags_[idx];
  return interval_flags_[idx];
}

std::vector<IntervalPiece> IntervalLabel::pieces() const {
  std::vector<IntervalPiece> out;
  std::optional<IntervalPiece> cur;
  const std::size_t n = endpoints_.size();
  for (std::size_t j = 0; j <= n; ++j) {
    if (interval_flags_[j] && !cur) {
      cur = IntervalPiece{};
      if (j > 0) cur->lo = endpoints_[j - 1];
    }
    if (j == n) break;
    if (endpoint_flags_[j]) {
      if (!cur) cur = IntervalPiece{endpoints_[j], true, std::nullopt, false};
      if (!interval_flags_[j + 1]) {
        cur->hi = endpoints_[j];
        cur->hi_closed = true;
        out.push_back(*cur);
        cur.reset();
      }
    } else if (cur) {
      cur->hi = endpoints_[j];
      cur->hi_closed = false;
      out.push_back(*cur);
      cur.reset();
    }
  }
  if (cur) out.push_back(*cur);
  return out;
}

bool operator==(const IntervalLabel& a, const IntervalLabel& b) {
  return a.endpoints_ == b.endpoints_ && a.interval_flags_ == b.interval_flags_ &&
         a.endpoint_flags_ == b.endpoint_flags_;
}

std::strong_ordering operator<=>(const IntervalLabel& a, const IntervalLabel& b) {
  const auto& ea = a.endpoints_;
  const auto& eb = b.endpoints_;
  for (std::size_t i = 0; i < ea.size() && i < eb.size(); ++i) {
    if (auto c = compare(ea[i], eb[i]); c != 0) return c;
  }
  if (auto c = ea.size() <=> eb.size(); c != 0) return c;
  if (a.interval_flags_ != b.interval_flags_) {
    return a.interval_flags_ < b.interval_flags_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.endpoint_flags_ != b.endpoint_flags_) {
    return a.endpoint_flags_ < b.endpoint_flags_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace {

std::vector<Rational> merged_endpoints(std::span<const IntervalLabel* const> labels) {
  std::vector<Rational> all;
  for (const auto* l : labels) all.insert(all.end(), l->endpoints().begin(), l->endpoints().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// One sample point inside each open gap of the sweep over `e`.
std::vector<Rational> gap_samples(const std::vector<Rational>& e) {
  std::vector<Rational> s;
  if (e.empty()) {
    s.emplace_back(0);
    return s;
  }
  s.push_back(e.front() - 1);
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s.push_back((e[i] + e[i + 1]) / 2);
  s.push_back(e.back() + 1);
  return s;
}

IntervalLabel combine(const IntervalLabel& a, const IntervalLabel& b, const std::function<bool(bool, bool)>& op) {
  const IntervalLabel* both[] = {&a, &b};
  auto e = merged_endpoints(both);
  auto samples = gap_samples(e);
  std::vector<bool> iflags;
  std::vector<bool> eflags;
  for (const auto& x : samples) iflags.push_back(op(a.contains(x), b.contains(x)));
  for (const auto& x : e) eflags.push_back(op(a.contains(x), b.contains(x)));
  return IntervalLabel(std::move(e), std::move(iflags), std::move(eflags));
}

}  // namespace

IntervalLabel IntervalLabel::from_pieces(std::span<const IntervalPiece> pieces) {
  IntervalLabel out;
  for (const auto& p : pieces) out = combine(out, from_piece(p), [](bool x, bool y) { return x || y; });
  return out;
}

// ---------------------------------------------------------------- product

using Cell = std::vector<int>;

/// Common per-dimension partition of several product labels. Each label is
/// then a set of grid cells, which makes set operations exact.
class ProductGrid {
 public:
  ProductGrid(std::size_t arity, std::span<const ProductLabel* const> labels) : arity_(arity) {
    atoms_.resize(arity);
    for (std::size_t k = 0; k < arity; ++k) {
      std::vector<Label> comps;
      for (const auto* l : labels) {
        for (const auto& t : l->terms_) comps.push_back(t[k]);
      }
      atoms_[k] = refine_labels(comps);
    }
  }

  std::set<Cell> cells(const ProductLabel& p) const {
    std::set<Cell> out;
    for (const auto& term : p.terms_) {
      std::vector<std::vector<int>> choices(arity_);
      bool any_empty = false;
      for (std::size_t k = 0; k < arity_; ++k) {
        for (std::size_t i = 0; i < atoms_[k].size(); ++i) {
          if (intersects(atoms_[k][i], term[k])) choices[k].push_back(static_cast<int>(i));
        }
        if (choices[k].empty()) any_empty = true;
      }
      if (any_empty) continue;
      Cell c(arity_);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == arity_) {
          out.insert(c);
          return;
        }
        for (int i : choices[k]) {
          c[k] = i;
          rec(k + 1);
        }
      };
      rec(0);
    }
    return out;
  }

  ProductLabel to_label(std::set<Cell> cells) const {
    if (cells.empty()) return ProductLabel(arity_);
    std::vector<std::vector<Label>> atoms = atoms_;
    // Merge atoms of each dimension whose slices coincide.
    for (std::size_t k = 0; k < arity_; ++k) {
      std::map<int, std::set<Cell>> slices;
      for (const auto& c : cells) {
        Cell rest = c;
        rest.erase(rest.begin() + static_cast<long>(k));
        slices[c[k]].insert(std::move(rest));
      }
      std::map<std::set<Cell>, std::vector<int>> groups;
      for (auto& [atom, slice] : slices) groups[slice].push_back(atom);
      std::vector<Label> merged;
      std::map<int, int> remap;
      for (const auto& [slice, members] : groups) {
        std::vector<Label> parts;
        for (int m : members) parts.push_back(atoms[k][static_cast<std::size_t>(m)]);
        merged.push_back(unite_all(parts, parts.front()));
      }
      // Order merged atoms canonically.
      std::vector<std::size_t> order(merged.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return merged[x] < merged[y]; });
      std::vector<int> rank(merged.size());
      for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
      std::size_t g = 0;
      for (const auto& [slice, members] : groups) {
        for (int m : members) remap[m] = rank[g];
        ++g;
      }
      std::vector<Label> sorted;
      for (auto i : order) sorted.push_back(merged[i]);
      atoms[k] = std::move(sorted);
      std::set<Cell> next;
      for (auto c : cells) {
        c[k] = remap.at(c[k]);
        next.insert(std::move(c));
      }
      cells = std::move(next);
    }
    // Group by all but the last coordinate, uniting the last-dimension atoms.
    std::map<Cell, std::vector<int>> by_prefix;
    for (const auto& c : cells) {
      Cell prefix(c.begin(), c.end() - 1);
      by_prefix[prefix].push_back(c.back());
    }
    std::vector<ProductLabel::Term> terms;
    for (const auto& [prefix, lasts] : by_prefix) {
      ProductLabel::Term t;
      for (std::size_t k = 0; k + 1 < arity_; ++k) t.push_back(atoms[k][static_cast<std::size_t>(prefix[k])]);
      std::vector<Label> parts;
      for (int i : lasts) parts.push_back(atoms[arity_ - 1][static_cast<std::size_t>(i)]);
      t.push_back(unite_all(parts, parts.front()));
      terms.push_back(std::move(t));
    }
    std::sort(terms.begin(), terms.end());
    return ProductLabel(arity_, std::move(terms), true);
  }

 private:
  std::size_t arity_;
  std::vector<std::vector<Label>> atoms_;
};

ProductLabel::ProductLabel(std::size_t arity, std::vector<Term> terms, bool /*already_canonical*/)
    : arity_(arity), terms_(std::move(terms)) {}

ProductLabel::ProductLabel(std::size_t arity, std::vector<Term> terms) : arity_(arity) {
  if (arity == 0) throw Error(ErrorCode::invalid_argument, "product label arity must be positive");
  std::vector<Term> kept;
  for (auto& t : terms) {
    if (t.size() != arity) throw Error(ErrorCode::variant_mismatch, "product term arity mismatch");
    if (std::any_of(t.begin(), t.end(), [](const Label& l) { return is_empty(l); })) continue;
    kept.push_back(std::move(t));
  }
  ProductLabel raw(arity, std::move(kept), true);
  const ProductLabel* only[] = {&raw};
  ProductGrid grid(arity, only);
  *this = grid.to_label(grid.cells(raw));
}

bool operator==(const ProductLabel& a, const ProductLabel& b) {
  return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

std::strong_ordering operator<=>(const ProductLabel& a, const ProductLabel& b) {
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  for (std::size_t i = 0; i < a.terms_.size() && i < b.terms_.size(); ++i) {
    const auto& ta = a.terms_[i];
    const auto& tb = b.terms_[i];
    for (std::size_t k = 0; k < ta.size(); ++k) {
      if (auto c = ta[k] <=> tb[k]; c != 0) return c;
    }
  }
  return a.terms_.size() <=> b.terms_.size();
}

// ---------------------------------------------------------------- Label

std::string_view to_string(LabelVariant variant) {
  switch (variant) {
    case LabelVariant::finite: return "finite";
    case LabelVariant::interval: return "interval";
    case LabelVariant::product: return "product";
  }
  return "unknown";
}

Label::Label(Kind kind, ProductLabel l) : kind_(kind), value_(std::move(l)) {
  const auto& p = std::get<ProductLabel>(value_);
  bool differs = false;
  for (const auto& t : p.terms()) {
    for (const auto& c : t) differs = differs || c.kind() != kind;
  }
  if (!differs) return;
  std::vector<ProductLabel::Term> terms;
  for (const auto& t : p.terms()) {
    ProductLabel::Term nt;
    for (const auto& c : t) nt.push_back(c.with_kind(kind));
    terms.push_back(std::move(nt));
  }
  value_ = ProductLabel(p.arity(), std::move(terms));
}

Label Label::with_kind(Kind kind) const {
  if (kind == kind_) return *this;
  return std::visit([&](const auto& v) { return Label(kind, v); }, value_);
}

bool operator==(const Label& a, const Label& b) { return a.kind_ == b.kind_ && a.value_ == b.value_; }

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.value_.index() <=> b.value_.index(); c != 0) return c;
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.value_);
        if constexpr (std::is_same_v<T, FiniteLabel>) {
          if (x == y) return std::strong_ordering::equal;
          return x.events() < y.events() ? std::strong_ordering::less : std::strong_ordering::greater;
        } else {
          return x <=> y;
        }
      },
      a.value_);
}

namespace {

void check_compatible(const Label& a, const Label& b) {
  if (a.kind() != b.kind()) throw Error(ErrorCode::kind_mismatch, "labels of different kinds");
  if (a.variant() != b.variant()) {
    throw Error(ErrorCode::variant_mismatch, std::string("cannot combine ") + std::string(to_string(a.variant())) +
                                                 " and " + std::string(to_string(b.variant())) + " labels");
  }
  if (a.variant() == LabelVariant::product && a.as_product().arity() != b.as_product().arity()) {
    throw Error(ErrorCode::variant_mismatch, "product labels of different arity");
  }
}

enum class SetOp { unite, intersect, subtract };

bool apply(SetOp op, bool x, bool y) {
  switch (op) {
    case SetOp::unite: return x || y;
    case SetOp::intersect: return x && y;
    case SetOp::subtract: return x && !y;
  }
  return false;
}

Label binary(const Label& a, const Label& b, SetOp op) {
  check_compatible(a, b);
  switch (a.variant()) {
    case LabelVariant::finite: {
      const auto& x = a.as_finite().events();
      const auto& y = b.as_finite().events();
      std::vector<std::string> out;
      if (op == SetOp::unite) std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      if (op == SetOp::intersect) std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      if (op == SetOp::subtract) std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      return Label(a.kind(), FiniteLabel(std::move(out)));
    }
    case LabelVariant::interval:
      return Label(a.kind(), combine(a.as_interval(), b.as_interval(), [op](bool x, bool y) { return apply(op, x, y); }));
    case LabelVariant::product: {
      const auto& x = a.as_product();
      const auto& y = b.as_product();
      const ProductLabel* both[] = {&x, &y};
      ProductGrid grid(x.arity(), both);
      auto cx = grid.cells(x);
      auto cy = grid.cells(y);
      std::set<Cell> out;
      if (op == SetOp::unite) std::set_union(cx.begin(), cx.end(), cy.begin(), cy.end(), std::inserter(out, out.end()));
      if (op == SetOp::intersect)
        std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(), std::inserter(out, out.end()));
      if (op == SetOp::subtract)
        std::set_difference(cx.begin(), cx.end(), cy.begin(), cy.end(), std::inserter(out, out.end()));
      return Label(a.kind(), grid.to_label(std::move(out)));
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown label variant");
}

}  // namespace

Label unite(const Label& a, const Label& b) { return binary(a, b, SetOp::unite); }
Label intersect(const Label& a, const Label& b) { return binary(a, b, SetOp::intersect); }
Label subtract(const Label& a, const Label& b) { return binary(a, b, SetOp::subtract); }

bool is_empty(const Label& a) {
  return std::visit([](const auto& v) { return v.empty(); }, a.value());
}

bool contains(const Label& a, const EventValue& e) {
  switch (a.variant()) {
    case LabelVariant::finite:
      if (!e.is_id()) throw Error(ErrorCode::type_mismatch, "finite label queried with a non-identifier event");
      return a.as_finite().contains(e.id());
    case LabelVariant::interval:
      if (!e.is_real()) throw Error(ErrorCode::type_mismatch, "interval label queried with a non-real event");
      return a.as_interval().contains(e.real());
    case LabelVariant::product: {
      const auto& p = a.as_product();
      if (!e.is_tuple() || e.tuple().size() != p.arity()) {
        throw Error(ErrorCode::type_mismatch, "product label queried with a value of the wrong shape");
      }
      for (const auto& t : p.terms()) {
        bool all = true;
        for (std::size_t k = 0; k < t.size() && all; ++k) all = contains(t[k], e.tuple()[k]);
        if (all) return true;
      }
      return false;
    }
  }
  return false;
}

EventValue representative(const Label& a) {
  if (is_empty(a)) throw Error(ErrorCode::empty_label, "representative of an empty label");
  switch (a.variant()) {
    case LabelVariant::finite: return a.as_finite().events().front();
    case LabelVariant::interval: {
      const auto& l = a.as_interval();
      const auto& e = l.endpoints();
      const auto& ef = l.endpoint_flags();
      const auto& gf = l.interval_flags();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (ef[i]) return e[i];
      }
      for (std::size_t i = 1; i < e.size(); ++i) {
        if (gf[i]) return Rational((e[i - 1] + e[i]) / 2);
      }
      if (e.empty()) return Rational(0);
      if (gf.front()) return Rational(e.front() - 1);
      return Rational(e.back() + 1);
    }
    case LabelVariant::product: {
      EventValue::Tuple t;
      for (const auto& c : a.as_product().terms().front()) t.push_back(representative(c));
      return t;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown label variant");
}

Label empty_like(const Label& like) {
  switch (like.variant()) {
    case LabelVariant::finite: return Label(like.kind(), FiniteLabel{});
    case LabelVariant::interval: return Label(like.kind(), IntervalLabel{});
    case LabelVariant::product: return Label(like.kind(), ProductLabel(like.as_product().arity()));
  }
  throw Error(ErrorCode::invalid_argument, "unknown label variant");
}

Label unite_all(std::span<const Label> labels, const Label& like) {
  if (labels.empty()) return empty_like(like);
  for (const auto& l : labels) check_compatible(l, like);
  switch (like.variant()) {
    case LabelVariant::finite: {
      std::vector<std::string> all;
      for (const auto& l : labels) all.insert(all.end(), l.as_finite().events().begin(), l.as_finite().events().end());
      return Label(like.kind(), FiniteLabel(std::move(all)));
    }
    case LabelVariant::interval: {
      std::vector<const IntervalLabel*> ptrs;
      for (const auto& l : labels) ptrs.push_back(&l.as_interval());
      auto e = merged_endpoints(ptrs);
      auto samples = gap_samples(e);
      auto any = [&](const Rational& x) {
        return std::any_of(ptrs.begin(), ptrs.end(), [&](const IntervalLabel* p) { return p->contains(x); });
      };
      std::vector<bool> iflags;
      std::vector<bool> eflags;
      for (const auto& x : samples) iflags.push_back(any(x));
      for (const auto& x : e) eflags.push_back(any(x));
      return Label(like.kind(), IntervalLabel(std::move(e), std::move(iflags), std::move(eflags)));
    }
    case LabelVariant::product: {
      std::vector<ProductLabel::Term> terms;
      for (const auto& l : labels) {
        for (const auto& t : l.as_product().terms()) terms.push_back(t);
      }
      return Label(like.kind(), ProductLabel(like.as_product().arity(), std::move(terms)));
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown label variant");
}

bool is_subset(const Label& a, const Label& b) { return is_empty(subtract(a, b)); }
bool set_equal(const Label& a, const Label& b) {
  check_compatible(a, b);
  return a == b;
}
bool intersects(const Label& a, const Label& b) { return !is_empty(intersect(a, b)); }

bool is_singleton(const Label& a) {
  switch (a.variant()) {
    case LabelVariant::finite: return a.as_finite().size() == 1;
    case LabelVariant::interval: {
      const auto& l = a.as_interval();
      return l.endpoints().size() == 1 && l.endpoint_flags()[0] && !l.interval_flags()[0] && !l.interval_flags()[1];
    }
    case LabelVariant::product: {
      const auto& p = a.as_product();
      if (p.terms().size() != 1) return false;
      return std::all_of(p.terms()[0].begin(), p.terms()[0].end(), [](const Label& c) { return is_singleton(c); });
    }
  }
  return false;
}

std::optional<std::vector<EventValue>> enumerate_elements(const Label& a) {
  switch (a.variant()) {
    case LabelVariant::finite: {
      std::vector<EventValue> out;
      for (const auto& id : a.as_finite().events()) out.emplace_back(id);
      return out;
    }
    case LabelVariant::interval: {
      const auto& l = a.as_interval();
      if (std::any_of(l.interval_flags().begin(), l.interval_flags().end(), [](bool b) { return b; })) {
        return std::nullopt;
      }
      std::vector<EventValue> out;
      for (std::size_t i = 0; i < l.endpoints().size(); ++i) {
        if (l.endpoint_flags()[i]) out.emplace_back(l.endpoints()[i]);
      }
      return out;
    }
    case LabelVariant::product: {
      std::set<EventValue> all;
      for (const auto& t : a.as_product().terms()) {
        std::vector<std::vector<EventValue>> per;
        for (const auto& c : t) {
          auto e = enumerate_elements(c);
          if (!e) return std::nullopt;
          per.push_back(std::move(*e));
        }
        EventValue::Tuple cur(per.size());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
          if (k == per.size()) {
            all.insert(EventValue(cur));
            return;
          }
          for (const auto& v : per[k]) {
            cur[k] = v;
            rec(k + 1);
          }
        };
        rec(0);
      }
      return std::vector<EventValue>(all.begin(), all.end());
    }
  }
  return std::nullopt;
}

Label singleton(Kind kind, const EventValue& e) {
  if (e.is_id()) return Label(kind, FiniteLabel({e.id()}));
  if (e.is_real()) return Label(kind, IntervalLabel::point(e.real()));
  std::vector<Label> term;
  for (const auto& c : e.tuple()) term.push_back(singleton(kind, c));
  if (term.empty()) throw Error(ErrorCode::invalid_argument, "empty tuple has no singleton label");
  return Label(kind, ProductLabel(term.size(), {term}));
}

// ---------------------------------------------------------------- refinement

namespace {

void check_uniform(std::span<const Label> labels) {
  for (const auto& l : labels) check_compatible(labels.front(), l);
}

std::vector<Label> refine_finite(std::span<const Label> labels) {
  std::map<std::string, std::vector<bool>> signature;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const auto& id : labels[i].as_finite().events()) {
      auto& sig = signature[id];
      sig.resize(labels.size(), false);
      sig[i] = true;
    }
  }
  std::map<std::vector<bool>, std::vector<std::string>> groups;
  for (auto& [id, sig] : signature) groups[sig].push_back(id);
  std::vector<Label> out;
  for (auto& [sig, ids] : groups) out.push_back(Label(labels.front().kind(), FiniteLabel(std::move(ids))));
  return out;
}

std::vector<Label> refine_interval(std::span<const Label> labels) {
  std::vector<const IntervalLabel*> ptrs;
  for (const auto& l : labels) ptrs.push_back(&l.as_interval());
  auto e = merged_endpoints(ptrs);
  auto samples = gap_samples(e);
  auto sig = [&](const Rational& x) {
    std::vector<bool> s;
    for (const auto* p : ptrs) s.push_back(p->contains(x));
    return s;
  };
  std::map<std::vector<bool>, std::pair<std::vector<bool>, std::vector<bool>>> groups;
  auto slot = [&](const std::vector<bool>& s) -> auto& {
    auto it = groups.find(s);
    if (it == groups.end()) {
      it = groups.emplace(s, std::make_pair(std::vector<bool>(samples.size(), false),
                                            std::vector<bool>(e.size(), false)))
               .first;
    }
    return it->second;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto s = sig(samples[i]);
    if (std::none_of(s.begin(), s.end(), [](bool b) { return b; })) continue;
    slot(s).first[i] = true;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto s = sig(e[i]);
    if (std::none_of(s.begin(), s.end(), [](bool b) { return b; })) continue;
    slot(s).second[i] = true;
  }
  std::vector<Label> out;
  for (auto& [s, flags] : groups) {
    out.push_back(Label(labels.front().kind(), IntervalLabel(e, flags.first, flags.second)));
  }
  return out;
}

}  // namespace

std::vector<Label> refine_labels_generic(std::span<const Label> labels) {
  if (labels.empty()) return {};
  check_uniform(labels);
  std::vector<Label> blocks{unite_all(labels, labels.front())};
  for (const auto& l : labels) {
    std::vector<Label> next;
    for (const auto& r : blocks) {
      auto in = intersect(r, l);
      auto out = subtract(r, l);
      if (!is_empty(in)) next.push_back(std::move(in));
      if (!is_empty(out)) next.push_back(std::move(out));
    }
    blocks = std::move(next);
  }
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const Label& x) { return is_empty(x); }), blocks.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

std::vector<Label> refine_labels(std::span<const Label> labels) {
  if (labels.empty()) return {};
  check_uniform(labels);
  std::vector<Label> out;
  switch (labels.front().variant()) {
    case LabelVariant::finite: out = refine_finite(labels); break;
    case LabelVariant::interval: out = refine_interval(labels); break;
    case LabelVariant::product: return refine_labels_generic(labels);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- text

namespace {

std::string piece_to_string(const IntervalPiece& p) {
  if (p.lo && p.hi && *p.lo == *p.hi) return "{" + to_string(*p.lo) + "}";
  std::string out = p.lo ? (p.lo_closed ? "[" : "(") + to_string(*p.lo) : "(-inf";
  out += ",";
  out += p.hi ? to_string(*p.hi) + (p.hi_closed ? "]" : ")") : "inf)";
  return out;
}

}  // namespace

std::string to_string(const Label& a) {
  switch (a.variant()) {
    case LabelVariant::finite: {
      std::string out = "{";
      const auto& ev = a.as_finite().events();
      for (std::size_t i = 0; i < ev.size(); ++i) {
        if (i) out += ",";
        out += ev[i];
      }
      return out + "}";
    }
    case LabelVariant::interval: {
      auto ps = a.as_interval().pieces();
      if (ps.empty()) return "{}";
      std::string out;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += " u ";
        out += piece_to_string(ps[i]);
      }
      return out;
    }
    case LabelVariant::product: {
      const auto& terms = a.as_product().terms();
      if (terms.empty()) return "{}";
      std::string out;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        for (std::size_t k = 0; k < terms[i].size(); ++k) {
          if (k) out += " x ";
          bool wrap = terms[i][k].variant() == LabelVariant::product ||
                      (terms[i][k].variant() == LabelVariant::interval && terms[i][k].as_interval().pieces().size() > 1);
          out += wrap ? "(" + to_string(terms[i][k]) + ")" : to_string(terms[i][k]);
        }
      }
      return out;
    }
  }
  return "";
}

}  // namespace pgraph
