// Qualitative constraint networks over Allen relations.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <boost/rational.hpp>

#include "proctime/allen.hpp"
#include "proctime/network.hpp"

namespace proctime {

using Qcn = ConstraintNetwork<Relation>;

/// Path-consistency closure of an Allen network.
inline ClosureResult<Relation> close_qcn(Qcn n) { return close(std::move(n)); }

/// Searches for a realizable atomic refinement. Cells are refined in row
/// order with atoms tried in canonical order, closing after each choice, so
/// the returned scenario is the first one in that order. Path consistency is
/// complete for atomic Allen networks, which makes the leaves exact.
std::optional<Qcn> atomic_scenario(const Qcn& n);

inline bool atomic_consistent(const Qcn& n) { return atomic_scenario(n).has_value(); }

using Realization = std::map<std::string, std::pair<boost::rational<long long>, boost::rational<long long>>>;

inline constexpr std::size_t kRealizeSmallLimit = 4;

/// Exhaustive search over endpoint orders; witness endpoints are integers.
/// Throws ScaleError above kRealizeSmallLimit intervals.
std::optional<Realization> realize_small(const Qcn& n);

/// One line per non-tautology cell of the upper triangle over the sorted ids:
/// `<id_i> <id_j> {atoms}`. Intervals without constraints do not appear.
std::string serialize(const Qcn& n);
/// Inverse of serialize. Intervals are created in order of first mention.
Qcn parse_qcn(std::string_view text);

}  // namespace proctime
