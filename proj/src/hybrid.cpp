#include "proctime/hybrid.hpp"

#include <algorithm>
#include <sstream>

#include "proctime/errors.hpp"

namespace proctime {

std::string_view name_of(IntervalKind k) {
  switch (k) {
    case IntervalKind::action: return "action";
    case IntervalKind::state: return "state";
    case IntervalKind::timer: return "timer";
  }
  return "?";
}

std::size_t HybridNetwork::add_interval(IntervalInfo info) {
  const std::size_t i = qcn_.add_variable(info.id);
  const std::size_t s = stp_.add_point(TimePoint::start_of(info.id));
  const std::size_t e = stp_.add_point(TimePoint::end_of(info.id));
  stp_.constrain(s, e, Window::positive());
  points_.push_back({s, e});
  intervals_.push_back(std::move(info));
  return i;
}

std::size_t HybridNetwork::add_point(const std::string& id) { return stp_.add_point(TimePoint::anonymous(id)); }

void HybridNetwork::set_sporadic(const std::string& id, bool sporadic) {
  intervals_[qcn_.index(id)].sporadic = sporadic;
}

IntervalPoints HybridNetwork::points_of(std::size_t interval) const { return points_[interval]; }

void HybridNetwork::duration(const std::string& id, const Window& w) {
  const auto p = points_of(id);
  stp_.constrain(p.start, p.end, w);
}

HybridNetwork HybridNetwork::without(const std::vector<std::string>& ids) const {
  std::vector<std::size_t> dropped_intervals, dropped_points;
  for (const auto& id : ids) {
    if (auto i = qcn_.find(id)) {
      dropped_intervals.push_back(*i);
      dropped_points.push_back(points_[*i].start);
      dropped_points.push_back(points_[*i].end);
    } else if (auto p = stp_.find(id); p && stp_.point(*p).role == PointRole::anonymous) {
      dropped_points.push_back(*p);
    } else {
      throw ModelError("cannot remove unknown entity '" + id + "'");
    }
  }
  HybridNetwork out;
  out.qcn_ = qcn_.without(dropped_intervals);
  out.stp_ = stp_.without(dropped_points);
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (std::find(dropped_intervals.begin(), dropped_intervals.end(), i) != dropped_intervals.end()) continue;
    out.intervals_.push_back(intervals_[i]);
    out.points_.push_back({out.stp_.index(TimePoint::start_of(intervals_[i].id).id),
                           out.stp_.index(TimePoint::end_of(intervals_[i].id).id)});
  }
  return out;
}

namespace {

// Strongest convex window on y - x implied by a point relation over {<,=,>}.
std::optional<Window> window_for(PointRelation r) {
  switch (r) {
    case 1u: return Window::positive();
    case 3u: return Window(Bound::closed(0), Bound::unbounded());
    case 2u: return Window::exactly(0);
    case 4u: return Window(Bound::unbounded(), Bound::open(0));
    case 6u: return Window(Bound::unbounded(), Bound::closed(0));
    default: return std::nullopt;
  }
}

bool qualitative_phase(HybridNetwork& h, bool& consistent) {
  auto closed = close_qcn(h.qcn());
  consistent = closed.consistent;
  const bool changed = !(closed.network == h.qcn());
  h.qcn() = std::move(closed.network);
  return changed;
}

bool to_metric_phase(HybridNetwork& h) {
  const Stp before = h.stp();
  const auto& q = h.qcn();
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const auto orders = endpoint_orders(q.at(i, j));
      const auto pi = h.points_of(i), pj = h.points_of(j);
      const std::size_t xi[2] = {pi.start, pi.end}, yj[2] = {pj.start, pj.end};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (auto w = window_for(orders[a][b])) h.stp().constrain(xi[a], yj[b], *w);
    }
  }
  return !(before == h.stp());
}

bool metric_phase(HybridNetwork& h, bool& consistent) {
  auto closed = stp_close(h.stp());
  consistent = closed.consistent;
  const bool changed = !(closed.network == h.stp());
  h.stp() = std::move(closed.network);
  return changed;
}

bool to_qualitative_phase(HybridNetwork& h, bool& consistent) {
  bool changed = false;
  auto& q = h.qcn();
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const Relation before = q.at(i, j);
      const Relation after = before & metric_to_allen(h.stp(), h.points_of(i), h.points_of(j));
      if (after == before) continue;
      q.set(i, j, after);
      changed = true;
      if (after.is_empty()) {
        consistent = false;
        return true;
      }
    }
  }
  return changed;
}

}  // namespace

HybridClosure hybrid_close(HybridNetwork h, HybridPhase first) {
  // metric_to_allen needs a consistent minimal STP, so the point-to-Allen
  // phase only runs right after a successful STP pass.
  int phase = static_cast<int>(first);
  int quiet = 0;
  bool stp_minimal = false;
  while (quiet < 4) {
    bool consistent = true;
    bool changed = false;
    switch (static_cast<HybridPhase>(phase)) {
      case HybridPhase::qualitative:
        changed = qualitative_phase(h, consistent);
        break;
      case HybridPhase::to_metric:
        changed = to_metric_phase(h);
        if (changed) stp_minimal = false;
        break;
      case HybridPhase::metric:
        changed = metric_phase(h, consistent);
        stp_minimal = consistent;
        break;
      case HybridPhase::to_qualitative:
        if (!stp_minimal) {
          changed = metric_phase(h, consistent);
          stp_minimal = consistent;
          if (!consistent) break;
        }
        changed = to_qualitative_phase(h, consistent) || changed;
        break;
    }
    if (!consistent) return {std::move(h), false};
    quiet = changed ? 0 : quiet + 1;
    phase = (phase + 1) % 4;
  }
  return {std::move(h), true};
}

namespace {

std::optional<HybridSolution> solve(HybridNetwork h) {
  auto closed = hybrid_close(std::move(h));
  if (!closed.consistent) return std::nullopt;
  HybridNetwork& net = closed.network;
  const Qcn& q = net.qcn();
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const Relation cell = q.at(i, j);
      if (convex_point_closure(cell) == cell) continue;
      for (auto atom : cell.atoms()) {
        HybridNetwork branch = net;
        branch.qcn().set(i, j, atom);
        if (auto found = solve(std::move(branch))) return found;
      }
      return std::nullopt;
    }
  }
  HybridSolution out;
  out.times = stp_solution(net.stp());
  out.scenario = Qcn(q.ids());
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const auto pi = net.points_of(i), pj = net.points_of(j);
      out.scenario.set(i, j,
                       base_relation_of(out.times[pi.start], out.times[pi.end], out.times[pj.start], out.times[pj.end]));
    }
  }
  return out;
}

}  // namespace

std::optional<HybridSolution> hybrid_solve(const HybridNetwork& h) { return solve(h); }

std::string serialize(const HybridNetwork& h) { return serialize(h.qcn()) + "\n" + serialize(h.stp()); }

}  // namespace proctime
