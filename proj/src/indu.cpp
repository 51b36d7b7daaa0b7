#include "proctime/indu.hpp"

#include <bit>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {
namespace {

constexpr int bit_of(InduAtom a) { return index_of(a.allen) * 3 + static_cast<int>(a.dur); }

InduAtom atom_at(int bit) { return {static_cast<BaseRelation>(bit / 3), static_cast<DurSign>(bit % 3)}; }

constexpr std::uint64_t kValidMask = [] {
  std::uint64_t m = 0;
  for (auto r : kAllBaseRelations)
    for (auto s : kAllSigns)
      if (is_valid({r, s})) m |= std::uint64_t{1} << bit_of({r, s});
  return m;
}();

// Bit set over {lt, eq, gt}.
unsigned compose_signs(DurSign a, DurSign b) {
  if (a == DurSign::eq) return 1u << static_cast<int>(b);
  if (b == DurSign::eq || a == b) return 1u << static_cast<int>(a);
  return 0b111;
}

std::string_view sign_text(DurSign s) { return s == DurSign::lt ? "<" : s == DurSign::eq ? "=" : ">"; }

}  // namespace

InduRelation::InduRelation(InduAtom a) {
  if (is_valid(a)) mask_ = Mask{1} << bit_of(a);
}

InduRelation::InduRelation(std::initializer_list<InduAtom> atoms) {
  for (auto a : atoms) *this |= InduRelation(a);
}

InduRelation InduRelation::full() { return from_mask(kValidMask); }

InduRelation InduRelation::from_mask(Mask m) {
  InduRelation r;
  r.mask_ = m & kValidMask;
  return r;
}

InduRelation InduRelation::lift(Relation allen) {
  InduRelation out;
  for (auto r : allen.atoms())
    for (auto s : kAllSigns) out |= InduRelation(InduAtom{r, s});
  return out;
}

InduRelation InduRelation::with_signs(std::initializer_list<DurSign> signs) {
  InduRelation out;
  for (auto r : kAllBaseRelations)
    for (auto s : signs) out |= InduRelation(InduAtom{r, s});
  return out;
}

bool InduRelation::contains(InduAtom a) const { return (mask_ >> bit_of(a)) & 1u; }

int InduRelation::size() const { return std::popcount(mask_); }

std::vector<InduAtom> InduRelation::atoms() const {
  std::vector<InduAtom> out;
  for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(atom_at(std::countr_zero(m)));
  return out;
}

Relation InduRelation::allen() const {
  Relation out;
  for (auto a : atoms()) out |= a.allen;
  return out;
}

std::vector<InduAtom> valid_atoms() { return InduRelation::full().atoms(); }

InduRelation converse(InduRelation r) {
  InduRelation out;
  for (auto a : r.atoms()) out |= converse(a);
  return out;
}

InduRelation compose(InduRelation r1, InduRelation r2) {
  InduRelation out;
  for (auto a : r1.atoms()) {
    for (auto b : r2.atoms()) {
      const Relation allen = compose(a.allen, b.allen);
      const unsigned signs = compose_signs(a.dur, b.dur);
      for (auto r : allen.atoms())
        for (auto s : kAllSigns)
          if (signs & (1u << static_cast<int>(s))) out |= InduRelation(InduAtom{r, s});
    }
  }
  return out;
}

Qcn project_allen(const InduNetwork& n) {
  Qcn out(n.ids());
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = i + 1; j < n.size(); ++j) out.set(i, j, n.at(i, j).allen());
  return out;
}

std::string to_string(InduAtom a) {
  std::string out(name_of(a.allen));
  out += '^';
  out += sign_text(a.dur);
  return out;
}

std::string to_string(InduRelation r) {
  std::string out = "{";
  bool first = true;
  for (auto a : r.atoms()) {
    if (!first) out += ',';
    out += to_string(a);
    first = false;
  }
  out += '}';
  return out;
}

InduRelation parse_indu_relation(std::string_view text) {
  text = detail::trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("INDU relation must be brace-delimited: '" + std::string(text) + "'", 0);
  InduRelation out;
  for (auto item : detail::split(text.substr(1, text.size() - 2), ',')) {
    item = detail::trim(item);
    if (item.empty()) continue;
    const auto caret = item.find('^');
    const auto allen_part = item.substr(0, caret);
    const auto sign_part = caret == std::string_view::npos ? std::string_view("?") : item.substr(caret + 1);

    Relation allen;
    if (allen_part == "?") {
      allen = Relation::full();
    } else if (auto atom = parse_base_relation(allen_part)) {
      allen = *atom;
    } else {
      throw ParseError("unknown Allen part in '" + std::string(item) + "'", 0);
    }

    unsigned signs = 0;
    if (sign_part == "<") signs = 0b001;
    else if (sign_part == "=") signs = 0b010;
    else if (sign_part == ">") signs = 0b100;
    else if (sign_part == "<=" || sign_part == "≤") signs = 0b011;
    else if (sign_part == ">=" || sign_part == "≥") signs = 0b110;
    else if (sign_part == "?") signs = 0b111;
    else throw ParseError("unknown duration sign in '" + std::string(item) + "'", 0);

    for (auto r : allen.atoms())
      for (auto s : kAllSigns)
        if (signs & (1u << static_cast<int>(s))) out |= InduRelation(InduAtom{r, s});
  }
  return out;
}

}  // namespace proctime
