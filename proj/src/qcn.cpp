#include "proctime/qcn.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {
namespace {

std::optional<Qcn> search(Qcn n) {
  auto closed = close_qcn(std::move(n));
  if (!closed.consistent) return std::nullopt;
  Qcn& net = closed.network;
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      const Relation cell = net.at(i, j);
      if (cell.is_atomic()) continue;
      for (auto atom : cell.atoms()) {
        Qcn branch = net;
        branch.set(i, j, atom);
        if (auto found = search(std::move(branch))) return found;
      }
      return std::nullopt;
    }
  }
  return net;
}

}  // namespace

std::optional<Qcn> atomic_scenario(const Qcn& n) { return search(n); }

std::optional<Realization> realize_small(const Qcn& n) {
  const std::size_t count = n.size();
  if (count > kRealizeSmallLimit)
    throw ScaleError("realize_small handles at most " + std::to_string(kRealizeSmallLimit) + " intervals");
  const int ranks = static_cast<int>(2 * count);
  std::vector<std::pair<int, int>> spans;
  for (int s = 0; s < ranks; ++s)
    for (int e = s + 1; e < ranks; ++e) spans.emplace_back(s, e);

  std::vector<std::pair<int, int>> placed(count);
  std::function<bool(std::size_t)> place = [&](std::size_t k) {
    if (k == count) return true;
    for (const auto& span : spans) {
      bool ok = true;
      for (std::size_t prev = 0; prev < k && ok; ++prev) {
        const auto rel = base_relation_of(span.first, span.second, placed[prev].first, placed[prev].second);
        ok = n.at(k, prev).contains(rel);
      }
      if (!ok) continue;
      placed[k] = span;
      if (place(k + 1)) return true;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;

  Realization out;
  for (std::size_t i = 0; i < count; ++i) out[n.id(i)] = {placed[i].first, placed[i].second};
  return out;
}

std::string serialize(const Qcn& n) {
  std::vector<std::size_t> order(n.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return n.id(a) < n.id(b); });
  std::ostringstream out;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Relation cell = n.at(order[a], order[b]);
      if (cell.is_full()) continue;
      out << n.id(order[a]) << ' ' << n.id(order[b]) << ' ' << to_string(cell) << '\n';
    }
  }
  return out.str();
}

Qcn parse_qcn(std::string_view text) {
  Qcn n;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto first_space = line.find(' ');
    const auto brace = line.find('{');
    if (first_space == std::string_view::npos || brace == std::string_view::npos || brace < first_space)
      throw ParseError("line " + std::to_string(line_no) + ": expected '<id> <id> {atoms}'", line_no);
    const std::string a(detail::trim(line.substr(0, first_space)));
    const std::string b(detail::trim(line.substr(first_space + 1, brace - first_space - 1)));
    if (a.empty() || b.empty() || b.find(' ') != std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected '<id> <id> {atoms}'", line_no);
    Relation r;
    try {
      r = parse_relation(line.substr(brace));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    const std::size_t i = n.find(a) ? *n.find(a) : n.add_variable(a);
    const std::size_t j = n.find(b) ? *n.find(b) : n.add_variable(b);
    if (i == j) throw ParseError("line " + std::to_string(line_no) + ": self relation", line_no);
    n.set(i, j, r);
  }
  return n;
}

}  // namespace proctime
