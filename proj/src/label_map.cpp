#include "pgraph/label_map.hpp"

#include <algorithm>

#include "pgraph/error.hpp"

namespace pgraph {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

IntervalLabel piece_label(const IntervalPiece& p) { return IntervalLabel::from_piece(p); }

// Segments must be pairwise disjoint and cover the real line.
template <class Segments>
void check_partition(const Segments& segments, const char* what) {
  if (segments.empty()) throw Error(ErrorCode::invalid_argument, std::string(what) + " has no segments");
  Label covered(Kind::observation, IntervalLabel{});
  for (const auto& s : segments) {
    Label d(Kind::observation, piece_label(s.domain));
    if (is_empty(d)) throw Error(ErrorCode::invalid_argument, std::string(what) + " has an empty segment");
    if (intersects(covered, d)) throw Error(ErrorCode::invalid_argument, std::string(what) + " segments overlap");
    covered = unite(covered, d);
  }
  if (!(covered.as_interval() == IntervalLabel::real_line())) {
    throw Error(ErrorCode::partial_map, std::string(what) + " segments do not cover the real line");
  }
}

EventSpace infer_codomain(const std::vector<const Label*>& images) {
  std::vector<std::string> events;
  for (const auto* l : images) {
    if (l->variant() != LabelVariant::finite) {
      throw Error(ErrorCode::invalid_argument, "codomain must be declared for non-finite images");
    }
    events.insert(events.end(), l->as_finite().events().begin(), l->as_finite().events().end());
  }
  return EventSpace::finite(std::move(events));
}

bool undeclared(const EventSpace& s) { return s.type == EventSpace::Type::finite && s.events.empty(); }

void check_images(const std::vector<const Label*>& images, EventSpace& codomain) {
  for (const auto* l : images) {
    if (is_empty(*l)) throw Error(ErrorCode::invalid_argument, "map images must be nonempty");
  }
  if (undeclared(codomain)) codomain = infer_codomain(images);
  for (const auto* l : images) {
    if (auto why = label_space_mismatch(*l, codomain)) {
      throw Error(ErrorCode::invalid_argument, "map image " + to_string(*l) + " outside codomain: " + *why);
    }
  }
}

}  // namespace

EventMap::EventMap(FiniteTableMap m) {
  if (m.table.empty()) throw Error(ErrorCode::invalid_argument, "finite map has an empty table");
  std::vector<const Label*> images;
  for (const auto& [k, v] : m.table) images.push_back(&v);
  check_images(images, m.codomain);
  value_ = std::move(m);
}

EventMap::EventMap(PiecewiseAffineMap m) {
  check_partition(m.segments, "piecewise-affine map");
  for (const auto& s : m.segments) {
    auto bad = [&](const Rational& x) { return s.lower(x) > s.upper(x); };
    if ((s.domain.lo && bad(*s.domain.lo)) || (s.domain.hi && bad(*s.domain.hi)) ||
        (!s.domain.lo && s.upper.slope > s.lower.slope) || (!s.domain.hi && s.upper.slope < s.lower.slope) ||
        (!s.domain.lo && !s.domain.hi && bad(Rational(0)))) {
      throw Error(ErrorCode::invalid_argument, "piecewise-affine lower bound exceeds upper bound");
    }
  }
  value_ = std::move(m);
}

EventMap::EventMap(PiecewiseConstantMap m) {
  check_partition(m.segments, "piecewise-constant map");
  std::vector<const Label*> images;
  for (const auto& s : m.segments) images.push_back(&s.value);
  check_images(images, m.codomain);
  value_ = std::move(m);
}

EventMap::EventMap(ComponentwiseMap m) {
  if (m.components.empty()) throw Error(ErrorCode::invalid_argument, "componentwise map has no components");
  value_ = std::move(m);
}

EventMap::EventMap(CompositeMap m) {
  if (m.stages.empty()) throw Error(ErrorCode::invalid_argument, "composite map has no stages");
  value_ = std::move(m);
}

// ---------------------------------------------------------------- image

namespace {

Label require_interval(const Label& l, const char* what) {
  if (l.variant() != LabelVariant::interval) {
    throw Error(ErrorCode::type_mismatch, std::string(what) + " applies to interval labels only");
  }
  return l;
}

// Image of a convex slice under x -> [lower(x), upper(x)].
IntervalPiece affine_image(const IntervalPiece& slice, const Affine& lower, const Affine& upper) {
  IntervalPiece out;
  if (lower.slope == 0) {
    out.lo = lower.intercept;
    out.lo_closed = true;
  } else if (lower.slope > 0) {
    if (slice.lo) {
      out.lo = lower(*slice.lo);
      out.lo_closed = slice.lo_closed;
    }
  } else if (slice.hi) {
    out.lo = lower(*slice.hi);
    out.lo_closed = slice.hi_closed;
  }
  if (upper.slope == 0) {
    out.hi = upper.intercept;
    out.hi_closed = true;
  } else if (upper.slope > 0) {
    if (slice.hi) {
      out.hi = upper(*slice.hi);
      out.hi_closed = slice.hi_closed;
    }
  } else if (slice.lo) {
    out.hi = upper(*slice.lo);
    out.hi_closed = slice.lo_closed;
  }
  return out;
}

// {x | f(x) < r} or {x | f(x) <= r}.
IntervalLabel below(const Affine& f, const Rational& r, bool inclusive) {
  if (f.slope == 0) {
    bool all = inclusive ? f.intercept <= r : f.intercept < r;
    return all ? IntervalLabel::real_line() : IntervalLabel::empty_set();
  }
  Rational x = (r - f.intercept) / f.slope;
  if (f.slope > 0) return IntervalLabel::from_piece({std::nullopt, false, x, inclusive});
  return IntervalLabel::from_piece({x, inclusive, std::nullopt, false});
}

// {x | f(x) > r} or {x | f(x) >= r}.
IntervalLabel above(const Affine& f, const Rational& r, bool inclusive) {
  Affine neg{-f.slope, -f.intercept};
  return below(neg, -r, inclusive);
}

IntervalLabel meet(const IntervalLabel& a, const IntervalLabel& b) {
  return intersect(Label(Kind::observation, a), Label(Kind::observation, b)).as_interval();
}

std::vector<EventValue> elements_or_throw(const Label& l) {
  auto e = enumerate_elements(l);
  if (!e) throw Error(ErrorCode::partial_map, "finite map cannot read the infinite label " + to_string(l));
  return *e;
}

}  // namespace

Label image_of(const EventMap& h, const EventValue& e, Kind kind) {
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return singleton(kind, e); },
          [&](const FiniteTableMap& m) {
            auto it = m.table.find(e);
            if (it == m.table.end()) throw Error(ErrorCode::partial_map, "no image for event " + to_string(e));
            return it->second.with_kind(kind);
          },
          [&](const auto&) { return image(h, singleton(kind, e)); },
      },
      h.value());
}

Label image(const EventMap& h, const Label& l) {
  const Kind kind = l.kind();
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return l; },
          [&](const FiniteTableMap& m) {
            std::vector<Label> parts;
            for (const auto& e : elements_or_throw(l)) parts.push_back(image_of(h, e, kind));
            return unite_all(parts, empty_like(full_label(m.codomain, kind)));
          },
          [&](const PiecewiseAffineMap& m) {
            require_interval(l, "piecewise-affine map");
            std::vector<IntervalPiece> out;
            for (const auto& piece : l.as_interval().pieces()) {
              for (const auto& s : m.segments) {
                for (const auto& slice : meet(piece_label(piece), piece_label(s.domain)).pieces()) {
                  out.push_back(affine_image(slice, s.lower, s.upper));
                }
              }
            }
            return Label(kind, IntervalLabel::from_pieces(out));
          },
          [&](const PiecewiseConstantMap& m) {
            require_interval(l, "piecewise-constant map");
            std::vector<Label> parts;
            for (const auto& s : m.segments) {
              if (!meet(l.as_interval(), piece_label(s.domain)).empty()) parts.push_back(s.value.with_kind(kind));
            }
            return unite_all(parts, empty_like(full_label(m.codomain, kind)));
          },
          [&](const ComponentwiseMap& m) {
            if (l.variant() != LabelVariant::product || l.as_product().arity() != m.components.size()) {
              throw Error(ErrorCode::type_mismatch, "componentwise map needs a product label of arity " +
                                                        std::to_string(m.components.size()));
            }
            std::vector<ProductLabel::Term> terms;
            for (const auto& t : l.as_product().terms()) {
              ProductLabel::Term nt;
              for (std::size_t k = 0; k < t.size(); ++k) nt.push_back(image(m.components[k], t[k]));
              terms.push_back(std::move(nt));
            }
            return Label(kind, ProductLabel(m.components.size(), std::move(terms)));
          },
          [&](const CompositeMap& m) {
            Label cur = l;
            for (const auto& stage : m.stages) cur = image(stage, cur);
            return cur;
          },
      },
      h.value());
}

// ---------------------------------------------------------------- codomain

EventSpace codomain(const EventMap& h, const EventSpace& domain) {
  return std::visit(overloaded{
                        [&](const IdentityMap&) { return domain; },
                        [&](const FiniteTableMap& m) { return m.codomain; },
                        [&](const PiecewiseAffineMap&) { return EventSpace::real(); },
                        [&](const PiecewiseConstantMap& m) { return m.codomain; },
                        [&](const ComponentwiseMap& m) {
                          if (domain.type != EventSpace::Type::product ||
                              domain.components.size() != m.components.size()) {
                            throw Error(ErrorCode::type_mismatch, "componentwise map needs a product space of arity " +
                                                                      std::to_string(m.components.size()));
                          }
                          std::vector<EventSpace> comps;
                          for (std::size_t k = 0; k < m.components.size(); ++k) {
                            comps.push_back(codomain(m.components[k], domain.components[k]));
                          }
                          return EventSpace::product(std::move(comps));
                        },
                        [&](const CompositeMap& m) {
                          EventSpace cur = domain;
                          for (const auto& stage : m.stages) cur = codomain(stage, cur);
                          return cur;
                        },
                    },
                    h.value());
}

void check_total(const EventMap& h, const EventSpace& domain) {
  std::visit(overloaded{
                 [&](const IdentityMap&) {},
                 [&](const FiniteTableMap& m) {
                   auto all = enumerate_space(domain);
                   if (!all) throw Error(ErrorCode::partial_map, "finite map over the infinite space " + to_string(domain));
                   for (const auto& e : *all) {
                     if (!m.table.count(e)) throw Error(ErrorCode::partial_map, "no image for event " + to_string(e));
                   }
                 },
                 [&](const PiecewiseAffineMap&) {
                   if (domain.type != EventSpace::Type::real) {
                     throw Error(ErrorCode::type_mismatch, "piecewise-affine map needs a real space");
                   }
                 },
                 [&](const PiecewiseConstantMap&) {
                   if (domain.type != EventSpace::Type::real) {
                     throw Error(ErrorCode::type_mismatch, "piecewise-constant map needs a real space");
                   }
                 },
                 [&](const ComponentwiseMap& m) {
                   auto cod = codomain(h, domain);  // checks shape
                   (void)cod;
                   for (std::size_t k = 0; k < m.components.size(); ++k) {
                     check_total(m.components[k], domain.components[k]);
                   }
                 },
                 [&](const CompositeMap& m) {
                   EventSpace cur = domain;
                   for (const auto& stage : m.stages) {
                     check_total(stage, cur);
                     cur = codomain(stage, cur);
                   }
                 },
             },
             h.value());
}

// ---------------------------------------------------------------- preimage

Label preimage(const EventMap& h, const Label& target, const EventSpace& domain) {
  const Kind kind = target.kind();
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return target; },
          [&](const FiniteTableMap& m) {
            std::vector<Label> parts;
            for (const auto& [e, img] : m.table) {
              if (intersects(img.with_kind(kind), target)) parts.push_back(singleton(kind, e));
            }
            return unite_all(parts, empty_like(full_label(domain, kind)));
          },
          [&](const PiecewiseAffineMap& m) {
            require_interval(target, "piecewise-affine pre-image");
            Label out(kind, IntervalLabel{});
            for (const auto& s : m.segments) {
              for (const auto& t : target.as_interval().pieces()) {
                // [lower(x), upper(x)] meets t iff lower(x) <= t.hi and upper(x) >= t.lo.
                IntervalLabel xs = piece_label(s.domain);
                if (t.hi) xs = meet(xs, below(s.lower, *t.hi, t.hi_closed));
                if (t.lo) xs = meet(xs, above(s.upper, *t.lo, t.lo_closed));
                out = unite(out, Label(kind, xs));
              }
            }
            return out;
          },
          [&](const PiecewiseConstantMap& m) {
            Label out(kind, IntervalLabel{});
            for (const auto& s : m.segments) {
              if (intersects(s.value.with_kind(kind), target)) out = unite(out, Label(kind, piece_label(s.domain)));
            }
            return out;
          },
          [&](const ComponentwiseMap& m) {
            if (target.variant() != LabelVariant::product || target.as_product().arity() != m.components.size() ||
                domain.type != EventSpace::Type::product || domain.components.size() != m.components.size()) {
              throw Error(ErrorCode::type_mismatch, "componentwise pre-image needs product labels of arity " +
                                                        std::to_string(m.components.size()));
            }
            std::vector<ProductLabel::Term> terms;
            for (const auto& t : target.as_product().terms()) {
              ProductLabel::Term nt;
              for (std::size_t k = 0; k < t.size(); ++k) {
                nt.push_back(preimage(m.components[k], t[k], domain.components[k]));
              }
              terms.push_back(std::move(nt));
            }
            return Label(kind, ProductLabel(m.components.size(), std::move(terms)));
          },
          [&](const CompositeMap& m) {
            std::vector<EventSpace> domains{domain};
            for (std::size_t i = 0; i + 1 < m.stages.size(); ++i) {
              domains.push_back(codomain(m.stages[i], domains.back()));
            }
            Label cur = target;
            for (std::size_t i = m.stages.size(); i-- > 0;) cur = preimage(m.stages[i], cur, domains[i]);
            return cur;
          },
      },
      h.value());
}

// ---------------------------------------------------------------- injectivity

std::string_view to_string(Injectivity i) {
  switch (i) {
    case Injectivity::injective: return "injective";
    case Injectivity::not_injective: return "not injective";
    case Injectivity::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool pairwise_disjoint(const std::vector<Label>& ls) {
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (intersects(ls[i], ls[j])) return false;
    }
  }
  return true;
}

bool is_point(const IntervalPiece& p) { return p.lo && p.hi && *p.lo == *p.hi; }

}  // namespace

Injectivity is_injective(const EventMap& h, const EventSpace& domain) {
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return Injectivity::injective; },
          [&](const FiniteTableMap& m) {
            std::vector<Label> images;
            auto all = enumerate_space(domain);
            if (all) {
              for (const auto& e : *all) images.push_back(image_of(h, e, Kind::observation));
            } else {
              for (const auto& [e, img] : m.table) images.push_back(img);
            }
            return pairwise_disjoint(images) ? Injectivity::injective : Injectivity::not_injective;
          },
          [&](const PiecewiseAffineMap& m) {
            std::vector<Label> images;
            for (const auto& s : m.segments) {
              if (!(s.lower == s.upper)) return Injectivity::unknown;
              if (s.lower.slope == 0 && !is_point(s.domain)) return Injectivity::not_injective;
              images.push_back(image(h, Label(Kind::observation, piece_label(s.domain))));
            }
            return pairwise_disjoint(images) ? Injectivity::injective : Injectivity::not_injective;
          },
          [&](const PiecewiseConstantMap& m) {
            std::vector<Label> images;
            for (const auto& s : m.segments) {
              if (!is_point(s.domain)) return Injectivity::not_injective;
              images.push_back(s.value);
            }
            return pairwise_disjoint(images) ? Injectivity::injective : Injectivity::not_injective;
          },
          [&](const ComponentwiseMap& m) {
            bool all = true;
            for (std::size_t k = 0; k < m.components.size(); ++k) {
              auto c = is_injective(m.components[k], domain.components.at(k));
              if (c == Injectivity::not_injective) return Injectivity::not_injective;
              all = all && c == Injectivity::injective;
            }
            return all ? Injectivity::injective : Injectivity::unknown;
          },
          [&](const CompositeMap& m) {
            EventSpace cur = domain;
            for (const auto& stage : m.stages) {
              if (is_injective(stage, cur) != Injectivity::injective) return Injectivity::unknown;
              cur = codomain(stage, cur);
            }
            return Injectivity::injective;
          },
      },
      h.value());
}

// ---------------------------------------------------------------- composition

namespace {

// Shape of events a map can read, or nullopt when any shape is accepted.
std::optional<EventSpace::Type> reads(const EventMap& h) {
  return std::visit(overloaded{
                        [](const IdentityMap&) -> std::optional<EventSpace::Type> { return std::nullopt; },
                        [](const FiniteTableMap& m) -> std::optional<EventSpace::Type> {
                          const auto& k = m.table.begin()->first;
                          if (k.is_id()) return EventSpace::Type::finite;
                          if (k.is_real()) return EventSpace::Type::real;
                          return EventSpace::Type::product;
                        },
                        [](const PiecewiseAffineMap&) -> std::optional<EventSpace::Type> {
                          return EventSpace::Type::real;
                        },
                        [](const PiecewiseConstantMap&) -> std::optional<EventSpace::Type> {
                          return EventSpace::Type::real;
                        },
                        [](const ComponentwiseMap&) -> std::optional<EventSpace::Type> {
                          return EventSpace::Type::product;
                        },
                        [](const CompositeMap& m) { return reads(m.stages.front()); },
                    },
                    h.value());
}

}  // namespace

EventMap compose(const EventMap& h2, const EventMap& h1, const EventSpace& domain) {
  if (h1.is_identity()) return h2;
  if (h2.is_identity()) return h1;
  EventSpace mid = codomain(h1, domain);
  auto need = reads(h2);
  if (need && *need != mid.type) {
    throw Error(ErrorCode::non_composable, "the second map cannot read events of " + to_string(mid));
  }
  try {
    check_total(h2, mid);
  } catch (const Error& e) {
    throw Error(ErrorCode::non_composable, e.what());
  }
  const auto* t1 = std::get_if<FiniteTableMap>(&h1.value());
  const auto* t2 = std::get_if<FiniteTableMap>(&h2.value());
  if (t1 && t2) {
    FiniteTableMap out{{}, t2->codomain};
    for (const auto& [e, img] : t1->table) out.table.emplace(e, image(h2, img));
    return EventMap(std::move(out));
  }
  CompositeMap out;
  for (const auto* h : {&h1, &h2}) {
    if (const auto* c = std::get_if<CompositeMap>(&h->value())) {
      out.stages.insert(out.stages.end(), c->stages.begin(), c->stages.end());
    } else {
      out.stages.push_back(*h);
    }
  }
  return EventMap(std::move(out));
}

// ---------------------------------------------------------------- label maps

const EventMap& LabelMap::side(Kind kind) const {
  const auto& m = kind == Kind::action ? action_map : observation_map;
  if (!m) throw Error(ErrorCode::unmapped_kind, "no " + std::string(to_string(kind)) + " map configured");
  return *m;
}

Label apply_to_label(const LabelMap& h, const Label& l) { return image(h.side(l.kind()), l); }

PGraph apply_to_pgraph(const LabelMap& h, const PGraph& g) {
  bool has_action = false;
  bool has_observation = false;
  for (const auto& e : g.edges()) (e.label.kind() == Kind::action ? has_action : has_observation) = true;
  auto space_for = [&](Kind kind, bool used) {
    if (!used && !(kind == Kind::action ? h.action_map : h.observation_map)) return g.space(kind);
    return codomain(h.side(kind), g.space(kind));
  };
  PGraph out(space_for(Kind::action, has_action), space_for(Kind::observation, has_observation));
  for (const auto& v : g.vertices()) out.add_vertex(v.id, v.kind);
  for (const auto& e : g.edges()) out.add_edge(e.from, e.to, apply_to_label(h, e.label));
  for (auto v : g.initial()) out.add_initial(v);
  return out;
}

Label preimage(const LabelMap& h, const Label& target, const EventSpace& domain) {
  return preimage(h.side(target.kind()), target, domain);
}

Injectivity is_injective(const LabelMap& h, const PGraph& g) {
  auto a = is_injective(h.side(Kind::action), g.action_space());
  auto y = is_injective(h.side(Kind::observation), g.observation_space());
  if (a == Injectivity::not_injective || y == Injectivity::not_injective) return Injectivity::not_injective;
  if (a == Injectivity::injective && y == Injectivity::injective) return Injectivity::injective;
  return Injectivity::unknown;
}

LabelMap compose(const LabelMap& h2, const LabelMap& h1, const PGraph& g) {
  LabelMap out;
  if (h1.action_map && h2.action_map) out.action_map = compose(*h2.action_map, *h1.action_map, g.action_space());
  if (h1.observation_map && h2.observation_map) {
    out.observation_map = compose(*h2.observation_map, *h1.observation_map, g.observation_space());
  }
  return out;
}

}  // namespace pgraph
