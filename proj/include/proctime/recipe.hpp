// Object model of a procedural text and its encoding into hybrid networks.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "proctime/hybrid.hpp"

namespace proctime {

/// Byte range [begin, end) in the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

/// A duration as written: one number or a range, with an optional "about".
struct DurationPhrase {
  Rational lo{0};
  Rational hi{0};  // minutes; equal to lo unless a range was given
  bool about = false;
  std::string text;
  bool operator==(const DurationPhrase&) const = default;
};

struct EncodingOptions {
  Rational about_factor{1, 5};  // "about N" widens to N -/+ factor * N
  Relation meanwhile{BaseRelation::d, BaseRelation::f};
  Relation same_time{BaseRelation::s, BaseRelation::e, BaseRelation::si};
};

/// "1hr", "60 min", "2-3 hours", "2–3 hours", "about 25 minutes".
DurationPhrase parse_duration(std::string_view text);
Window to_window(const DurationPhrase& d, const EncodingOptions& options = {});
inline Window encode_duration(std::string_view text, const EncodingOptions& options = {}) {
  return to_window(parse_duration(text), options);
}

enum class ActionKind { preliminary, step };

struct LastOf {
  DurationPhrase length;
  std::string of;
  bool operator==(const LastOf&) const = default;
};

struct ActionNode {
  std::string id;
  std::string text;
  std::string verb;                  // first word of the text, lowercased
  std::vector<std::string> objects;  // ingredient or utensil names, when known
  Span span;
  ActionKind kind = ActionKind::step;
  std::string branch;  // empty outside alternatives

  bool meanwhile = false;
  std::optional<DurationPhrase> duration;
  std::optional<std::string> until;  // state id
  std::optional<LastOf> last;
  bool operator==(const ActionNode&) const = default;
};

struct StateNode {
  std::string id;
  std::string predicate;
  Span span;
  bool operator==(const StateNode&) const = default;
};

struct TimerNode {
  std::string id;
  DurationPhrase length;
  Span span;
  std::string owner;  // step whose `last ... of` created it, else empty
  std::string branch;
  bool operator==(const TimerNode&) const = default;
};

/// `a <atoms> b`; `word` keeps a connective such as "then" when one was used.
struct ExplicitRelation {
  std::string a;
  std::string b;
  Relation relation;
  std::string word;
  Span span;
  std::string branch;
  bool operator==(const ExplicitRelation&) const = default;
};

struct RepetitionMarker {
  enum class Mode { sporadic, alternation, count };
  std::string target;
  Mode mode = Mode::sporadic;
  std::string other;             // container (sporadic) or partner (alternation)
  std::optional<unsigned> times;  // count mode with a known number
  std::string until;             // count mode: state id
  Span span;
  std::string branch;
  bool operator==(const RepetitionMarker&) const = default;
};

/// One optional branch. Each branch forms its own exclusive choice between
/// taking it and leaving it out.
struct AlternativeBranch {
  std::string id;
  std::string guard;
  std::vector<std::string> members;
  Span span;
  bool operator==(const AlternativeBranch&) const = default;
};

struct Recipe {
  std::string title;
  std::vector<ActionNode> preliminaries;
  std::vector<ActionNode> steps;  // document order
  std::vector<StateNode> states;
  std::vector<TimerNode> timers;
  std::vector<ExplicitRelation> relations;
  std::vector<RepetitionMarker> markers;
  std::vector<AlternativeBranch> alternatives;

  const ActionNode* action(const std::string& id) const;
  const StateNode* state(const std::string& id) const;
  const TimerNode* timer(const std::string& id) const;
  /// Source span of any node, if it has one.
  std::optional<Span> span_of(const std::string& id) const;
  /// Nodes in document order.
  std::vector<std::string> document_order() const;
  bool operator==(const Recipe&) const = default;
};

struct Scenario {
  std::string label;  // "base" or sorted branch ids joined by '+'
  HybridNetwork network;
};

/// One network per combination of alternatives, base first, then by the
/// binary count over alternatives sorted by id.
std::vector<Scenario> encode_recipe(const Recipe& r, const EncodingOptions& options = {});

enum class Phenomenon {
  qualitative_duration,
  precise_quantitative_duration,
  imprecise_quantitative_duration,
  total_order,
  partial_order,
  simultaneity,
  indeterminate_repetition,
  alternation,
  sporadic_repetition,
  exclusive_disjunction,
};

std::string_view name_of(Phenomenon p);
std::set<Phenomenon> phenomena_coverage(const Recipe& r);

/// Allen relation of a connective word ("then", "before", "meanwhile",
/// "sametime"), or nothing for an unknown word.
std::optional<Relation> connective_relation(std::string_view word, const EncodingOptions& options = {});

}  // namespace proctime
