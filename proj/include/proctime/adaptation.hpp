// Adaptation by revision: drop the actions of a substituted ingredient, add
// domain knowledge as hard constraints, then give up as few of the recipe's
// own constraints as needed to get back to a consistent network.
#pragma once

#include <string>
#include <vector>

#include "proctime/hybrid.hpp"
#include "proctime/recipe.hpp"

namespace proctime {

enum class Layer { allen, metric };
enum class Provenance { domain_hard, recipe_soft };

/// One stated constraint. Allen constraints read `from relation to` between
/// intervals; metric ones bound `to - from` between points. Ids are
/// `allen:<a>|<b>` or `metric:<p>|<q>` over the sorted pair, except that an
/// interval's own start and end read start first.
struct TaggedConstraint {
  std::string id;
  Layer layer = Layer::allen;
  std::string from;
  std::string to;
  Relation relation = Relation::full();
  Window window;
  Provenance provenance = Provenance::recipe_soft;
  bool operator==(const TaggedConstraint&) const = default;
};

TaggedConstraint tag_allen(const std::string& a, const std::string& b, Relation r, Provenance p);
TaggedConstraint tag_metric(const std::string& from, const std::string& to, const Window& w, Provenance p);
/// `{b}` or a window.
std::string payload_text(const TaggedConstraint& c);

/// Every non-trivial constraint held by `h`, sorted by id. The implicit
/// (0, inf) duration of an interval is not listed.
std::vector<TaggedConstraint> constraints_of(const HybridNetwork& h, Provenance p);

/// Same intervals and points as `h` with no constraints beyond the implicit
/// positive durations.
HybridNetwork skeleton_of(const HybridNetwork& h);

/// `skeleton` plus the given constraints.
HybridNetwork assemble(const HybridNetwork& skeleton, const std::vector<TaggedConstraint>& constraints);

struct DomainKnowledge {
  std::string name;
  std::vector<IntervalInfo> nodes;
  std::vector<std::string> anchors;   // recipe nodes the knowledge refers to
  std::vector<std::string> removals;  // recipe nodes made obsolete
  std::vector<TaggedConstraint> constraints;
};

struct TaggedNetwork {
  HybridNetwork skeleton;
  std::vector<TaggedConstraint> constraints;  // sorted by id
  std::vector<std::string> removed;
  std::vector<IntervalInfo> injected;
};

/// Throws ModelError on an unknown id.
inline HybridNetwork remove_entities(const HybridNetwork& h, const std::vector<std::string>& ids) {
  return h.without(ids);
}

/// Union of `h` (soft) and `k` (hard). A hard constraint whose id collides
/// with a soft one gets the suffix `:hard`. Throws ModelError when an anchor
/// is missing or a knowledge node already exists.
TaggedNetwork inject(const HybridNetwork& h, const DomainKnowledge& k);

/// remove_entities with the knowledge's removals, then inject.
TaggedNetwork prepare_adaptation(const HybridNetwork& h, const DomainKnowledge& k);

inline constexpr std::size_t kReviseMaxSoft = 24;

struct RevisionResult {
  HybridNetwork network;  // hard plus retained constraints
  std::vector<std::string> retained;
  std::vector<std::string> relaxed;
  Qcn scenario;  // one atom per cell, realizable
  std::vector<TaggedConstraint> constraints;
  std::vector<std::string> removed;
  std::vector<IntervalInfo> injected;
};

/// Keeps every hard constraint and a largest set of soft ones that is
/// consistent with them; among equally large sets, the one that keeps the
/// smaller ids. Relaxed constraints become tautologies. Conflicts are
/// searched per connected group of intervals, branch and bound over the
/// sorted soft ids, including before excluding. Throws ModelError when the
/// hard constraints alone are inconsistent and ScaleError above
/// kReviseMaxSoft soft constraints in one conflicting group.
RevisionResult revise(const TaggedNetwork& t);

/// `hard`, `retained` and `relaxed` lines with payloads, sorted by id.
std::string serialize(const RevisionResult& r);

struct TextEdit {
  enum class Op { remove, insert_after, flag_review };
  Span span;
  Op op = Op::remove;
  std::string payload;
  bool operator==(const TextEdit&) const = default;
};

std::string_view name_of(TextEdit::Op op);

/// Span edits on the source text: delete removed nodes, insert the labels of
/// injected actions, flag relaxed constraints. Insertions go after the
/// recipe action that precedes, in document order, the first recipe action
/// an injected action must come before; or after the last action.
std::vector<TextEdit> adapt_text_edits(const RevisionResult& r, const Recipe& source);

/// `<start>..<end> <op> [payload]` per line.
std::string serialize(const std::vector<TextEdit>& edits);

}  // namespace proctime
