// Allen's interval algebra: the 13 base relations and disjunctive relations
// represented as bit sets over them.
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace proctime {

/// Base relations in canonical order. Every deterministic choice in the
/// library (scenario search, printing) follows this order.
enum class BaseRelation : std::uint8_t { b, bi, m, mi, o, oi, d, di, s, si, f, fi, e };

inline constexpr int kBaseRelationCount = 13;

inline constexpr std::array<BaseRelation, kBaseRelationCount> kAllBaseRelations = {
    BaseRelation::b,  BaseRelation::bi, BaseRelation::m,  BaseRelation::mi, BaseRelation::o,
    BaseRelation::oi, BaseRelation::d,  BaseRelation::di, BaseRelation::s,  BaseRelation::si,
    BaseRelation::f,  BaseRelation::fi, BaseRelation::e};

constexpr int index_of(BaseRelation r) { return static_cast<int>(r); }

constexpr BaseRelation converse(BaseRelation r) {
  if (r == BaseRelation::e) return r;
  const int i = index_of(r);
  return static_cast<BaseRelation>(i % 2 == 0 ? i + 1 : i - 1);
}

std::string_view name_of(BaseRelation r);

/// Accepts canonical names and the aliases <, >, p, pi, a, eq, =.
std::optional<BaseRelation> parse_base_relation(std::string_view token);

/// Relation of x to y for intervals given by endpoints. Requires start < end
/// on both; any totally ordered endpoint type works.
template <class T>
BaseRelation base_relation_of(const T& xs, const T& xe, const T& ys, const T& ye) {
  if (xe < ys) return BaseRelation::b;
  if (ye < xs) return BaseRelation::bi;
  if (xe == ys) return BaseRelation::m;
  if (ye == xs) return BaseRelation::mi;
  if (xs == ys) {
    if (xe == ye) return BaseRelation::e;
    return xe < ye ? BaseRelation::s : BaseRelation::si;
  }
  if (xe == ye) return xs < ys ? BaseRelation::fi : BaseRelation::f;
  if (xs < ys) return xe < ye ? BaseRelation::o : BaseRelation::di;
  return xe < ye ? BaseRelation::d : BaseRelation::oi;
}

/// A disjunction of base relations. The empty relation is a contradiction,
/// the full one carries no information.
class Relation {
 public:
  using Mask = std::uint16_t;
  static constexpr Mask kFullMask = (1u << kBaseRelationCount) - 1;

  constexpr Relation() = default;
  constexpr Relation(BaseRelation r) : mask_(static_cast<Mask>(1u << index_of(r))) {}
  constexpr Relation(std::initializer_list<BaseRelation> atoms) {
    for (auto a : atoms) mask_ |= static_cast<Mask>(1u << index_of(a));
  }

  static constexpr Relation from_mask(Mask m) {
    Relation r;
    r.mask_ = static_cast<Mask>(m & kFullMask);
    return r;
  }
  static constexpr Relation empty() { return {}; }
  static constexpr Relation full() { return from_mask(kFullMask); }
  /// Neutral element of composition.
  static constexpr Relation identity() { return Relation(BaseRelation::e); }

  constexpr Mask mask() const { return mask_; }
  constexpr bool is_empty() const { return mask_ == 0; }
  constexpr bool is_full() const { return mask_ == kFullMask; }
  constexpr bool contains(BaseRelation r) const { return (mask_ >> index_of(r)) & 1u; }
  constexpr bool subset_of(Relation o) const { return (mask_ & ~o.mask_) == 0; }
  int size() const;
  bool is_atomic() const { return size() == 1; }

  std::vector<BaseRelation> atoms() const;

  constexpr Relation operator|(Relation o) const { return from_mask(mask_ | o.mask_); }
  constexpr Relation operator&(Relation o) const { return from_mask(mask_ & o.mask_); }
  constexpr Relation& operator|=(Relation o) { mask_ |= o.mask_; return *this; }
  constexpr Relation& operator&=(Relation o) { mask_ &= o.mask_; return *this; }
  constexpr bool operator==(const Relation&) const = default;

 private:
  Mask mask_ = 0;
};

Relation converse(Relation r);
Relation compose(BaseRelation r1, BaseRelation r2);
Relation compose(Relation r1, Relation r2);

/// `{b,m}`-style text, canonical order; the empty relation prints as `{}`.
std::string to_string(Relation r);
/// Parses `{atom,...}` with aliases; throws ParseError on bad input.
Relation parse_relation(std::string_view text);

}  // namespace proctime
