// INDU: Allen relations paired with a qualitative comparison of the two
// intervals' durations.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "proctime/allen.hpp"
#include "proctime/network.hpp"
#include "proctime/qcn.hpp"

namespace proctime {

/// Duration of the first interval compared with the second.
enum class DurSign : std::uint8_t { lt, eq, gt };

inline constexpr DurSign kAllSigns[] = {DurSign::lt, DurSign::eq, DurSign::gt};

constexpr DurSign converse(DurSign s) {
  return s == DurSign::lt ? DurSign::gt : s == DurSign::gt ? DurSign::lt : DurSign::eq;
}

struct InduAtom {
  BaseRelation allen;
  DurSign dur;
  constexpr bool operator==(const InduAtom&) const = default;
};

/// Allen parts d, s, f force a shorter first interval; di, si, fi a longer
/// one; e equal durations. The remaining six admit any sign.
constexpr bool is_valid(InduAtom a) {
  switch (a.allen) {
    case BaseRelation::d:
    case BaseRelation::s:
    case BaseRelation::f:
      return a.dur == DurSign::lt;
    case BaseRelation::di:
    case BaseRelation::si:
    case BaseRelation::fi:
      return a.dur == DurSign::gt;
    case BaseRelation::e:
      return a.dur == DurSign::eq;
    default:
      return true;
  }
}

constexpr InduAtom converse(InduAtom a) { return {converse(a.allen), converse(a.dur)}; }

class InduRelation {
 public:
  using Mask = std::uint64_t;

  constexpr InduRelation() = default;
  InduRelation(InduAtom a);
  InduRelation(std::initializer_list<InduAtom> atoms);

  static InduRelation empty() { return {}; }
  static InduRelation full();
  static InduRelation identity() { return InduAtom{BaseRelation::e, DurSign::eq}; }
  static InduRelation from_mask(Mask m);
  /// All valid atoms whose Allen part lies in `r`.
  static InduRelation lift(Relation r);
  /// All valid atoms whose sign lies in `signs` (the `?^sign` reading).
  static InduRelation with_signs(std::initializer_list<DurSign> signs);

  Mask mask() const { return mask_; }
  bool is_empty() const { return mask_ == 0; }
  bool is_full() const { return *this == full(); }
  bool contains(InduAtom a) const;
  bool subset_of(InduRelation o) const { return (mask_ & ~o.mask_) == 0; }
  int size() const;
  std::vector<InduAtom> atoms() const;
  /// Union of the Allen parts.
  Relation allen() const;

  InduRelation operator|(InduRelation o) const { return from_mask(mask_ | o.mask_); }
  InduRelation operator&(InduRelation o) const { return from_mask(mask_ & o.mask_); }
  InduRelation& operator|=(InduRelation o) { mask_ |= o.mask_; return *this; }
  bool operator==(const InduRelation&) const = default;

 private:
  Mask mask_ = 0;
};

/// Exactly the 25 atoms satisfying is_valid, in canonical order.
std::vector<InduAtom> valid_atoms();

InduRelation converse(InduRelation r);
/// Atom pairs compose their Allen parts through the Allen table and their
/// signs by transitivity of the duration order; invalid pairs are dropped.
InduRelation compose(InduRelation r1, InduRelation r2);

using InduNetwork = ConstraintNetwork<InduRelation>;

inline ClosureResult<InduRelation> indu_close(InduNetwork n) { return close(std::move(n)); }

Qcn project_allen(const InduNetwork& n);

/// `m^<` per atom, braces around, canonical order (Allen index then <, =, >).
std::string to_string(InduRelation r);
std::string to_string(InduAtom a);
/// Accepts `allen^signs` items where allen may be `?` (any) and signs may be
/// `<`, `=`, `>`, `<=`, `>=`, `≤`, `≥` or `?`. A bare Allen name means any sign.
InduRelation parse_indu_relation(std::string_view text);

}  // namespace proctime
