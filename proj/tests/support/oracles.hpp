// Brute-force oracles shared by the unit tests, the acceptance suite and the
// composition-table generator. Nothing here calls into the reasoners.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "proctime/allen.hpp"
#include "proctime/indu.hpp"
#include "proctime/metric.hpp"

namespace proctime::oracle {

struct Span {
  int start;
  int end;
};

/// Every (start, end) pair with 0 <= start < end < ranks.
inline std::vector<Span> spans_over(int ranks) {
  std::vector<Span> out;
  for (int s = 0; s < ranks; ++s)
    for (int e = s + 1; e < ranks; ++e) out.push_back({s, e});
  return out;
}

inline BaseRelation relation_of(const Span& x, const Span& y) {
  return base_relation_of(x.start, x.end, y.start, y.end);
}

/// Visits every placement of `n` intervals on integer ranks 0..2n-1. Every
/// weak order of the 2n endpoints is represented at least once.
inline void for_each_placement(int n, const std::function<void(const std::vector<Span>&)>& visit) {
  const auto spans = spans_over(2 * n);
  std::vector<Span> current(n);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      visit(current);
      return;
    }
    for (const auto& s : spans) {
      current[k] = s;
      rec(k + 1);
    }
  };
  rec(0);
}

/// Atoms observed for x-z over all placements of three intervals with
/// r1(x, y) and r2(y, z).
inline Relation enumerate_composition(BaseRelation r1, BaseRelation r2) {
  Relation out;
  for_each_placement(3, [&](const std::vector<Span>& p) {
    if (relation_of(p[0], p[1]) == r1 && relation_of(p[1], p[2]) == r2) out |= relation_of(p[0], p[2]);
  });
  return out;
}

inline std::array<std::array<Relation, kBaseRelationCount>, kBaseRelationCount> enumerate_composition_table() {
  std::array<std::array<Relation, kBaseRelationCount>, kBaseRelationCount> table{};
  for (auto r1 : kAllBaseRelations)
    for (auto r2 : kAllBaseRelations) table[index_of(r1)][index_of(r2)] = enumerate_composition(r1, r2);
  return table;
}

/// INDU atom of x to y: Allen part plus duration comparison.
inline InduAtom indu_atom_of(const Span& x, const Span& y) {
  const int dx = x.end - x.start, dy = y.end - y.start;
  return {relation_of(x, y), dx < dy ? DurSign::lt : dx == dy ? DurSign::eq : DurSign::gt};
}

/// Observed INDU composition table over three intervals placed on integer
/// coordinates 0..grid-1. Indexed by the bit position allen * 3 + sign.
using InduTable = std::array<std::array<InduRelation, 39>, 39>;

inline int indu_bit(InduAtom a) { return index_of(a.allen) * 3 + static_cast<int>(a.dur); }

inline InduTable enumerate_indu_composition(int grid) {
  InduTable table{};
  const auto spans = spans_over(grid);
  for (const auto& x : spans)
    for (const auto& y : spans)
      for (const auto& z : spans)
        table[indu_bit(indu_atom_of(x, y))][indu_bit(indu_atom_of(y, z))] |= indu_atom_of(x, z);
  return table;
}

// Shortest simple path weight by enumerating every simple path.
inline Weight brute_shortest(const Stp& s, std::size_t from, std::size_t to) {
  if (from == to) return Weight{0, false, false};
  Weight best = Weight::unbounded();
  std::vector<char> used(s.size(), 0);
  std::function<void(std::size_t, Weight)> walk = [&](std::size_t at, Weight acc) {
    if (at == to) {
      if (acc < best) best = acc;
      return;
    }
    used[at] = 1;
    for (std::size_t next = 0; next < s.size(); ++next) {
      if (used[next] || s.distance(at, next).infinite) continue;
      walk(next, acc + s.distance(at, next));
    }
    used[at] = 0;
  };
  walk(from, Weight{0, false, false});
  return best;
}

// Every simple cycle through `start` has nonnegative weight (and a strict
// edge forbids zero).
inline bool brute_consistent(const Stp& s) {
  const Weight zero{0, false, false};
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j || s.distance(j, i).infinite) continue;
      const Weight path = brute_shortest(s, i, j);
      if (!path.infinite && path + s.distance(j, i) < zero) return false;
    }
  return true;
}

}  // namespace proctime::oracle
