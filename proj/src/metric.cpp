#include "proctime/metric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  text = detail::trim(text);
  auto parse_int = [&](std::string_view s) -> long long {
    if (s.empty()) throw ParseError("empty number in '" + std::string(text) + "'", 0);
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
      negative = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw ParseError("bad number '" + std::string(text) + "'", 0);
    long long v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw ParseError("bad number '" + std::string(text) + "'", 0);
      v = v * 10 + (s[i] - '0');
    }
    return negative ? -v : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const long long den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    const long long w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    const long long f = frac.empty() ? 0 : parse_int(frac);
    return Rational(w) + Rational(negative ? -f : f, scale);
  }
  return Rational(parse_int(text));
}

// ---------------------------------------------------------------- windows

bool Window::is_empty() const {
  if (lo_.infinite || hi_.infinite) return false;
  if (lo_.value != hi_.value) return lo_.value > hi_.value;
  return lo_.strict || hi_.strict;
}

bool Window::contains(const Rational& v) const {
  const bool above = lo_.infinite || v > lo_.value || (v == lo_.value && !lo_.strict);
  const bool below = hi_.infinite || v < hi_.value || (v == hi_.value && !hi_.strict);
  return above && below;
}

Window Window::intersect(const Window& o) const {
  // Lower ends compare as upper bounds of the negated difference.
  const Weight mine_lo = Weight::of(negate(lo_)), other_lo = Weight::of(negate(o.lo_));
  const Weight lo = other_lo < mine_lo ? other_lo : mine_lo;
  const Weight mine_hi = Weight::of(hi_), other_hi = Weight::of(o.hi_);
  const Weight hi = other_hi < mine_hi ? other_hi : mine_hi;
  return {negate(lo.as_bound()), hi.as_bound()};
}

std::string to_string(const Window& w) {
  std::string out;
  out += w.lo().infinite ? "(-inf" : (w.lo().strict ? "(" : "[") + to_string(w.lo().value);
  out += ", ";
  out += w.hi().infinite ? "inf)" : to_string(w.hi().value) + (w.hi().strict ? ")" : "]");
  return out;
}

Window parse_window(std::string_view text) {
  text = detail::trim(text);
  if (text.size() < 5) throw ParseError("bad window '" + std::string(text) + "'", 0);
  const char open = text.front(), close = text.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')'))
    throw ParseError("window needs [ or ( and ] or ): '" + std::string(text) + "'", 0);
  const auto parts = detail::split(text.substr(1, text.size() - 2), ',');
  if (parts.size() != 2) throw ParseError("window needs two ends: '" + std::string(text) + "'", 0);
  const auto lo_text = detail::trim(parts[0]), hi_text = detail::trim(parts[1]);
  Bound lo = lo_text == "-inf" ? Bound::unbounded() : Bound{parse_rational(lo_text), open == '(', false};
  Bound hi = (hi_text == "inf" || hi_text == "+inf") ? Bound::unbounded() : Bound{parse_rational(hi_text), close == ')', false};
  return {lo, hi};
}

// -------------------------------------------------------------------- STP

std::optional<std::size_t> Stp::find(const std::string& id) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].id == id) return i;
  return std::nullopt;
}

std::size_t Stp::index(const std::string& id) const {
  if (auto i = find(id)) return *i;
  throw ModelError("unknown time point '" + id + "'");
}

std::size_t Stp::add_point(TimePoint p) {
  if (find(p.id)) throw ModelError("duplicate time point '" + p.id + "'");
  const std::size_t n = size();
  std::vector<Weight> grown((n + 1) * (n + 1), Weight::unbounded());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = dist_[i * n + j];
  grown[n * (n + 1) + n] = Weight{0, false, false};
  dist_ = std::move(grown);
  points_.push_back(std::move(p));
  return n;
}

Window Stp::window(std::size_t from, std::size_t to) const {
  const Weight& back = distance(to, from);
  return {Bound{-back.value, back.strict, back.infinite}, distance(from, to).as_bound()};
}

void Stp::constrain(std::size_t from, std::size_t to, const Window& w) {
  const Weight hi = Weight::of(w.hi());
  if (hi < distance(from, to)) set_distance(from, to, hi);
  const Weight back{-w.lo().value, w.lo().strict, w.lo().infinite};
  if (back < distance(to, from)) set_distance(to, from, back);
}

Stp Stp::without(const std::vector<std::size_t>& dropped) const {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < size(); ++i)
    if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) kept.push_back(i);
  Stp out;
  for (auto i : kept) out.add_point(points_[i]);
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b)
      if (a != b) out.set_distance(a, b, distance(kept[a], kept[b]));
  return out;
}

StpClosure stp_close(Stp s) {
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s.distance(i, k).infinite) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Weight through = s.distance(i, k) + s.distance(k, j);
        if (through < s.distance(i, j)) s.set_distance(i, j, through);
      }
    }
  }
  const Weight zero{0, false, false};
  for (std::size_t i = 0; i < n; ++i)
    if (s.distance(i, i) < zero) return {std::move(s), false};
  return {std::move(s), true};
}

std::vector<Rational> stp_solution(const Stp& minimal) {
  const std::size_t n = minimal.size();
  std::vector<Rational> times(n);
  for (std::size_t k = 0; k < n; ++k) {
    Window allowed = Window::any();
    for (std::size_t p = 0; p < k; ++p) {
      const Window rel = minimal.window(p, k);
      const Bound lo{rel.lo().value + times[p], rel.lo().strict, rel.lo().infinite};
      const Bound hi{rel.hi().value + times[p], rel.hi().strict, rel.hi().infinite};
      allowed = allowed.intersect(Window(lo, hi));
    }
    if (allowed.is_empty()) throw std::logic_error("stp_solution: network is not minimal and consistent");
    const Bound& lo = allowed.lo();
    const Bound& hi = allowed.hi();
    if (!lo.infinite && !hi.infinite) {
      times[k] = lo.value == hi.value ? lo.value : (lo.value + hi.value) / 2;
    } else if (!lo.infinite) {
      times[k] = lo.strict ? lo.value + 1 : lo.value;
    } else if (!hi.infinite) {
      times[k] = hi.strict ? hi.value - 1 : hi.value;
    } else {
      times[k] = 0;
    }
  }
  return times;
}

std::string serialize(const Stp& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.point(a).id < s.point(b).id; });
  std::ostringstream out;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      std::size_t from = order[a], to = order[b];
      const auto& pf = s.point(from);
      const auto& pt = s.point(to);
      const bool same_interval = pf.role != PointRole::anonymous && pt.role != PointRole::anonymous &&
                                 pf.interval == pt.interval;
      if (same_interval && pf.role == PointRole::end) std::swap(from, to);
      const Window w = s.window(from, to);
      if (w.is_any() || (same_interval && w == Window::positive())) continue;
      out << s.point(to).id << " - " << s.point(from).id << " in " << to_string(w) << '\n';
    }
  }
  return out.str();
}

// ------------------------------------------------------------------- TCSP

std::optional<TcspWitness> tcsp_consistent(const Tcsp& t) {
  std::size_t disjunctive = 0;
  for (const auto& c : t.constraints) {
    if (c.windows.empty()) throw ModelError("disjunctive constraint without windows");
    if (c.windows.size() > kTcspMaxWindows)
      throw ScaleError("constraint has " + std::to_string(c.windows.size()) + " windows, limit " +
                       std::to_string(kTcspMaxWindows));
    if (c.windows.size() > 1) ++disjunctive;
  }
  if (disjunctive > kTcspMaxDisjunctive)
    throw ScaleError(std::to_string(disjunctive) + " disjunctive constraints, limit " +
                     std::to_string(kTcspMaxDisjunctive));

  std::vector<std::size_t> choice(t.constraints.size());
  std::function<std::optional<TcspWitness>(std::size_t, const Stp&)> descend =
      [&](std::size_t k, const Stp& current) -> std::optional<TcspWitness> {
    auto closed = stp_close(current);
    if (!closed.consistent) return std::nullopt;
    if (k == t.constraints.size()) return TcspWitness{std::move(closed.network), choice};
    const auto& c = t.constraints[k];
    for (std::size_t w = 0; w < c.windows.size(); ++w) {
      Stp next = closed.network;
      next.constrain(c.from, c.to, c.windows[w]);
      choice[k] = w;
      if (auto found = descend(k + 1, next)) return found;
    }
    return std::nullopt;
  };
  return descend(0, t.base);
}

// ------------------------------------------------------ Allen translation

namespace {

using E = Endpoint;
constexpr E xs{E::Of::x, E::Side::start}, xe{E::Of::x, E::Side::end};
constexpr E ys{E::Of::y, E::Side::start}, ye{E::Of::y, E::Side::end};

constexpr std::size_t slot(E e) {
  return (e.of == E::Of::x ? 0 : 2) + (e.side == E::Side::start ? 0 : 1);
}

using Signature = std::array<std::array<PointRelation, 2>, 2>;

PointRelation order_of(int a, int b) { return a < b ? 1u : a == b ? 2u : 4u; }

const std::array<Signature, kBaseRelationCount>& atom_signatures() {
  static const auto table = [] {
    std::array<Signature, kBaseRelationCount> out{};
    for (int x0 = 0; x0 < 4; ++x0)
      for (int x1 = x0 + 1; x1 < 4; ++x1)
        for (int y0 = 0; y0 < 4; ++y0)
          for (int y1 = y0 + 1; y1 < 4; ++y1) {
            const int xsv[2] = {x0, x1}, ysv[2] = {y0, y1};
            auto& sig = out[index_of(base_relation_of(x0, x1, y0, y1))];
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) sig[a][b] = order_of(xsv[a], ysv[b]);
          }
    return out;
  }();
  return table;
}

PointRelation convex_hull(PointRelation r) { return (r & 1u) && (r & 4u) ? 7u : r; }

}  // namespace

std::vector<EndpointConstraint> allen_atom_to_points(BaseRelation r) {
  const Window after = Window::positive();
  const Window same = Window::exactly(0);
  switch (r) {
    case BaseRelation::b: return {{xe, ys, after}};
    case BaseRelation::bi: return {{ye, xs, after}};
    case BaseRelation::m: return {{xe, ys, same}};
    case BaseRelation::mi: return {{ye, xs, same}};
    case BaseRelation::o: return {{xs, ys, after}, {ys, xe, after}, {xe, ye, after}};
    case BaseRelation::oi: return {{ys, xs, after}, {xs, ye, after}, {ye, xe, after}};
    case BaseRelation::d: return {{ys, xs, after}, {xe, ye, after}};
    case BaseRelation::di: return {{xs, ys, after}, {ye, xe, after}};
    case BaseRelation::s: return {{xs, ys, same}, {xe, ye, after}};
    case BaseRelation::si: return {{xs, ys, same}, {ye, xe, after}};
    case BaseRelation::f: return {{xe, ye, same}, {ys, xs, after}};
    case BaseRelation::fi: return {{xe, ye, same}, {xs, ys, after}};
    case BaseRelation::e: return {{xs, ys, same}, {xe, ye, same}};
  }
  return {};
}

Relation metric_to_allen(const Stp& minimal, IntervalPoints x, IntervalPoints y) {
  const std::size_t index[4] = {x.start, x.end, y.start, y.end};
  Stp local;
  local.add_point(TimePoint::anonymous("xs"));
  local.add_point(TimePoint::anonymous("xe"));
  local.add_point(TimePoint::anonymous("ys"));
  local.add_point(TimePoint::anonymous("ye"));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      if (a != b) local.set_distance(a, b, minimal.distance(index[a], index[b]));

  Relation out;
  for (auto atom : kAllBaseRelations) {
    Stp probe = local;
    for (const auto& c : allen_atom_to_points(atom)) probe.constrain(slot(c.from), slot(c.to), c.window);
    if (stp_close(std::move(probe)).consistent) out |= atom;
  }
  return out;
}

std::array<std::array<PointRelation, 2>, 2> endpoint_orders(Relation r) {
  Signature out{};
  for (auto atom : r.atoms()) {
    const auto& sig = atom_signatures()[index_of(atom)];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out[a][b] |= sig[a][b];
  }
  return out;
}

Relation convex_point_closure(Relation r) {
  auto hull = endpoint_orders(r);
  for (auto& row : hull)
    for (auto& cell : row) cell = convex_hull(cell);
  Relation out;
  for (auto atom : kAllBaseRelations) {
    const auto& sig = atom_signatures()[index_of(atom)];
    bool inside = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) inside = inside && (sig[a][b] & ~hull[a][b]) == 0;
    if (inside) out |= atom;
  }
  return out;
}

}  // namespace proctime
