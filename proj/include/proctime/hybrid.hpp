// Intervals carrying both Allen constraints and metric windows on their
// endpoints, with propagation between the two layers.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proctime/metric.hpp"
#include "proctime/qcn.hpp"

namespace proctime {

enum class IntervalKind { action, state, timer };

std::string_view name_of(IntervalKind k);

struct IntervalInfo {
  std::string id;
  IntervalKind kind = IntervalKind::action;
  std::string label;
  bool sporadic = false;
  bool operator==(const IntervalInfo&) const = default;
};

class HybridNetwork {
 public:
  HybridNetwork() = default;

  const std::vector<IntervalInfo>& intervals() const { return intervals_; }
  const IntervalInfo& interval(std::size_t i) const { return intervals_[i]; }
  std::optional<std::size_t> find_interval(const std::string& id) const { return qcn_.find(id); }
  const Qcn& qcn() const { return qcn_; }
  const Stp& stp() const { return stp_; }
  Qcn& qcn() { return qcn_; }
  Stp& stp() { return stp_; }

  /// Adds the interval and its start/end points linked by end - start > 0.
  std::size_t add_interval(IntervalInfo info);
  /// Adds a point that belongs to no interval.
  std::size_t add_point(const std::string& id);
  void set_sporadic(const std::string& id, bool sporadic = true);

  IntervalPoints points_of(std::size_t interval) const;
  IntervalPoints points_of(const std::string& id) const { return points_of(qcn_.index(id)); }

  /// Intersects the Allen cell a -> b.
  Relation relate(const std::string& a, const std::string& b, Relation r) { return qcn_.constrain(a, b, r); }
  /// Intersects the window on end(id) - start(id).
  void duration(const std::string& id, const Window& w);
  /// Intersects the window on `to - from` (point ids).
  void bound(const std::string& from, const std::string& to, const Window& w) { stp_.constrain(from, to, w); }

  /// Drops intervals or anonymous points by id with every constraint on them.
  HybridNetwork without(const std::vector<std::string>& ids) const;

  bool operator==(const HybridNetwork&) const = default;

 private:
  std::vector<IntervalInfo> intervals_;
  std::vector<IntervalPoints> points_;
  Qcn qcn_;
  Stp stp_;
};

/// Phases of one propagation round.
enum class HybridPhase { qualitative, to_metric, metric, to_qualitative };

struct HybridClosure {
  HybridNetwork network;  // closed Allen layer and minimal STP
  bool consistent = true;
};

/// Cycles Allen closure, Allen-to-point tightening, STP minimization and
/// point-to-Allen tightening until a full round changes nothing.
HybridClosure hybrid_close(HybridNetwork h, HybridPhase first = HybridPhase::qualitative);

struct HybridSolution {
  Qcn scenario;                 // one atom per cell
  std::vector<Rational> times;  // value per STP point
};

/// Complete decision procedure. Cells that are not exactly expressible as
/// point windows are split atom by atom (canonical order); once every cell is,
/// the STP is equivalent to the whole network and yields concrete times.
std::optional<HybridSolution> hybrid_solve(const HybridNetwork& h);

inline bool hybrid_consistent(const HybridNetwork& h) { return hybrid_solve(h).has_value(); }

/// Allen layer followed by a blank line and the metric layer.
std::string serialize(const HybridNetwork& h);

}  // namespace proctime
