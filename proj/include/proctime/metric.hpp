// Metric constraints on time points: windows lo <= to - from <= hi with open
// or closed ends, simple temporal problems (one window per pair) and their
// disjunctive generalization.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "proctime/allen.hpp"

namespace proctime {

/// Time quantities are exact rationals; the canonical unit is the minute.
using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);
/// Integers, `p/q` fractions and decimals such as `1.5`.
Rational parse_rational(std::string_view text);

/// One end of a window. `infinite` means -inf for a lower end and +inf for
/// an upper end; `value` and `strict` are ignored then.
struct Bound {
  Rational value{0};
  bool strict = false;
  bool infinite = false;

  static Bound closed(Rational v) { return {v, false, false}; }
  static Bound open(Rational v) { return {v, true, false}; }
  static Bound unbounded() { return {Rational{0}, true, true}; }
  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value && a.strict == b.strict;
  }
};

class Window {
 public:
  Window() : lo_(Bound::unbounded()), hi_(Bound::unbounded()) {}
  Window(Bound lo, Bound hi) : lo_(lo), hi_(hi) {}

  static Window any() { return {}; }
  static Window exactly(Rational v) { return {Bound::closed(v), Bound::closed(v)}; }
  static Window closed(Rational lo, Rational hi) { return {Bound::closed(lo), Bound::closed(hi)}; }
  /// (0, inf): strictly after.
  static Window positive() { return {Bound::open(0), Bound::unbounded()}; }

  const Bound& lo() const { return lo_; }
  const Bound& hi() const { return hi_; }

  bool is_empty() const;
  bool is_any() const { return lo_.infinite && hi_.infinite; }
  bool contains(const Rational& v) const;
  Window intersect(const Window& o) const;
  /// Window of from - to, given this one for to - from.
  Window negated() const { return {negate(hi_), negate(lo_)}; }

  bool operator==(const Window&) const = default;

 private:
  static Bound negate(const Bound& b) { return {-b.value, b.strict, b.infinite}; }
  Bound lo_;
  Bound hi_;
};

/// `[lo, hi]`, `(lo, hi)`, mixed, with `-inf`/`inf` for missing ends.
std::string to_string(const Window& w);
Window parse_window(std::string_view text);

enum class PointRole { start, end, anonymous };

struct TimePoint {
  std::string id;
  PointRole role = PointRole::anonymous;
  std::string interval;  // owning interval for start/end points

  static TimePoint anonymous(const std::string& id) { return {id, PointRole::anonymous, {}}; }
  static TimePoint start_of(const std::string& interval) { return {"start(" + interval + ")", PointRole::start, interval}; }
  static TimePoint end_of(const std::string& interval) { return {"end(" + interval + ")", PointRole::end, interval}; }
  bool operator==(const TimePoint&) const = default;
};

/// Upper bound on a point difference, ordered so that smaller is tighter.
struct Weight {
  Rational value{0};
  bool strict = false;
  bool infinite = true;

  static Weight unbounded() { return {}; }
  static Weight of(const Bound& upper) { return {upper.value, upper.strict, upper.infinite}; }
  Bound as_bound() const { return {value, strict, infinite}; }

  friend Weight operator+(const Weight& a, const Weight& b) {
    if (a.infinite || b.infinite) return unbounded();
    return {a.value + b.value, a.strict || b.strict, false};
  }
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    if (a.value != b.value) return a.value < b.value;
    return a.strict && !b.strict;
  }
  friend bool operator==(const Weight& a, const Weight& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value && a.strict == b.strict;
  }
};

/// Simple temporal problem: at most one window per pair of points, held as
/// the distance matrix d(i, j) >= x_j - x_i.
class Stp {
 public:
  Stp() = default;

  std::size_t size() const { return points_.size(); }
  const std::vector<TimePoint>& points() const { return points_; }
  const TimePoint& point(std::size_t i) const { return points_[i]; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index(const std::string& id) const;

  std::size_t add_point(TimePoint p);

  /// Window on x_to - x_from.
  Window window(std::size_t from, std::size_t to) const;
  /// Intersects the window on x_to - x_from with `w`.
  void constrain(std::size_t from, std::size_t to, const Window& w);
  void constrain(const std::string& from, const std::string& to, const Window& w) {
    constrain(index(from), index(to), w);
  }

  const Weight& distance(std::size_t from, std::size_t to) const { return dist_[from * size() + to]; }
  void set_distance(std::size_t from, std::size_t to, const Weight& w) { dist_[from * size() + to] = w; }

  Stp without(const std::vector<std::size_t>& dropped) const;

  bool operator==(const Stp&) const = default;

 private:
  std::vector<TimePoint> points_;
  std::vector<Weight> dist_;
};

struct StpClosure {
  Stp network;
  bool consistent = true;
};

/// All-pairs shortest paths over (value, strictness) weights. A cycle below
/// zero, or at zero through a strict edge, makes the problem inconsistent.
StpClosure stp_close(Stp s);

/// Exact values for every point of a consistent minimal STP, assigned in
/// point order. Midpoints are used inside open windows.
std::vector<Rational> stp_solution(const Stp& minimal);

/// `<to> - <from> in <window>` per non-trivial pair i < j of the sorted ids.
/// The implicit (0, inf) duration of each interval is omitted.
std::string serialize(const Stp& s);

struct DisjunctiveConstraint {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<Window> windows;
};

inline constexpr std::size_t kTcspMaxWindows = 4;
inline constexpr std::size_t kTcspMaxDisjunctive = 12;

/// Base STP plus constraints with several disjoint windows each.
struct Tcsp {
  Stp base;
  std::vector<DisjunctiveConstraint> constraints;
};

struct TcspWitness {
  Stp stp;                           // minimal network of the chosen selection
  std::vector<std::size_t> choice;  // window index per constraint
};

/// Backtracks over one window per constraint, in constraint then window
/// order. Throws ScaleError above kTcspMaxWindows windows per constraint or
/// kTcspMaxDisjunctive constraints with more than one window.
std::optional<TcspWitness> tcsp_consistent(const Tcsp& t);

/// Endpoint of one of two related intervals x and y.
struct Endpoint {
  enum class Of { x, y } of;
  enum class Side { start, end } side;
  bool operator==(const Endpoint&) const = default;
};

struct EndpointConstraint {
  Endpoint from;
  Endpoint to;
  Window window;  // on to - from
};

/// Defining endpoint constraints of `r` for x r y, beyond start < end.
std::vector<EndpointConstraint> allen_atom_to_points(BaseRelation r);

/// Point indices of an interval inside an STP.
struct IntervalPoints {
  std::size_t start;
  std::size_t end;
  bool operator==(const IntervalPoints&) const = default;
};

/// Atoms r for which x r y is satisfiable in the minimal consistent STP.
Relation metric_to_allen(const Stp& minimal, IntervalPoints x, IntervalPoints y);

/// Point-algebra relation between two points as a set over {<, =, >}.
using PointRelation = unsigned;  // bit 0: <, bit 1: =, bit 2: >

/// For x r y, the order of each endpoint pair (x.start, x.end) x
/// (y.start, y.end), indexed [x side][y side].
std::array<std::array<PointRelation, 2>, 2> endpoint_orders(Relation r);

/// Atoms admitted by the convex hull of each endpoint order of `r`; equals
/// `r` exactly when `r` is expressible as a conjunction of point windows.
Relation convex_point_closure(Relation r);

}  // namespace proctime
