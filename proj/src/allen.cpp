#include "proctime/allen.hpp"

#include <bit>
#include <sstream>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {
namespace {

constexpr std::array<std::string_view, kBaseRelationCount> kNames = {
    "b", "bi", "m", "mi", "o", "oi", "d", "di", "s", "si", "f", "fi", "e"};

constexpr Relation::Mask kTable[kBaseRelationCount][kBaseRelationCount] = {
#include "allen_table.inc"
};

}  // namespace

std::string_view name_of(BaseRelation r) { return kNames[index_of(r)]; }

std::optional<BaseRelation> parse_base_relation(std::string_view token) {
  for (auto r : kAllBaseRelations)
    if (token == kNames[index_of(r)]) return r;
  if (token == "<" || token == "p") return BaseRelation::b;
  if (token == ">" || token == "pi" || token == "a") return BaseRelation::bi;
  if (token == "eq" || token == "=") return BaseRelation::e;
  return std::nullopt;
}

int Relation::size() const { return std::popcount(mask_); }

std::vector<BaseRelation> Relation::atoms() const {
  std::vector<BaseRelation> out;
  for (auto r : kAllBaseRelations)
    if (contains(r)) out.push_back(r);
  return out;
}

Relation converse(Relation r) {
  Relation out;
  for (auto a : kAllBaseRelations)
    if (r.contains(a)) out |= converse(a);
  return out;
}

Relation compose(BaseRelation r1, BaseRelation r2) {
  return Relation::from_mask(kTable[index_of(r1)][index_of(r2)]);
}

Relation compose(Relation r1, Relation r2) {
  if (r1.is_full() || r2.is_full()) {
    if (r1.is_empty() || r2.is_empty()) return Relation::empty();
    // Composition with the universal relation is universal because every
    // atom has a nonempty image.
    return Relation::full();
  }
  Relation out;
  for (auto a : kAllBaseRelations) {
    if (!r1.contains(a)) continue;
    for (auto b : kAllBaseRelations)
      if (r2.contains(b)) out |= compose(a, b);
    if (out.is_full()) break;
  }
  return out;
}

std::string to_string(Relation r) {
  std::string out = "{";
  bool first = true;
  for (auto a : r.atoms()) {
    if (!first) out += ',';
    out += name_of(a);
    first = false;
  }
  out += '}';
  return out;
}

Relation parse_relation(std::string_view text) {
  text = detail::trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("relation must be brace-delimited: '" + std::string(text) + "'", 0);
  Relation out;
  for (auto token : detail::split(text.substr(1, text.size() - 2), ',')) {
    token = detail::trim(token);
    if (token.empty()) continue;
    auto atom = parse_base_relation(token);
    if (!atom) throw ParseError("unknown Allen relation '" + std::string(token) + "'", 0);
    out |= *atom;
  }
  return out;
}

}  // namespace proctime
