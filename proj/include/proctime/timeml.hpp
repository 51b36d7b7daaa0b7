// Reader for a TimeML subset: EVENT, MAKEINSTANCE, SIGNAL, TLINK, plus
// TIMEX3 durations and sets. Tags may be interleaved with plain text.
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "proctime/hybrid.hpp"
#include "proctime/qcn.hpp"
#include "proctime/recipe.hpp"

namespace proctime {

// Spans index the tag-free text; `offset` is the tag's byte offset in the
// markup.
struct TimemlEvent {
  std::string eid;
  std::string event_class;
  std::string text;
  Span span;
  std::size_t offset = 0;
};

struct TimemlInstance {
  std::string eiid;
  std::string event_id;
  std::string tense;
  std::string aspect;
  std::string pos;
  std::size_t offset = 0;
};

struct TimemlSignal {
  std::string sid;
  std::string text;
  Span span;
  std::size_t offset = 0;
};

struct TimemlTimex {
  std::string tid;
  std::string type;  // DURATION or SET
  std::string value;
  std::string text;
  Span span;
  std::size_t offset = 0;
};

struct TimemlLink {
  std::string lid;
  std::string source;  // eventInstanceID or timeID
  std::string signal;
  std::string target;  // relatedToEvent(Instance) or relatedToTime
  std::string rel_type;
  std::size_t offset = 0;
};

struct AnnotatedDoc {
  std::string text;  // markup with tags removed and entities decoded
  std::vector<TimemlEvent> events;
  std::vector<TimemlInstance> instances;
  std::vector<TimemlSignal> signals;
  std::vector<TimemlTimex> timexes;
  std::vector<TimemlLink> tlinks;

  const TimemlEvent* event(const std::string& eid) const;
  const TimemlInstance* instance(const std::string& eiid) const;
  const TimemlTimex* timex(const std::string& tid) const;
  /// Interval id of an instance: its event id, or the instance id when the
  /// event has several instances.
  std::string interval_id(const std::string& eiid) const;
};

/// Errors are ParseErrors positioned at a byte offset of the markup: unknown
/// or unsupported tags, missing attributes, duplicate ids, dangling
/// references.
AnnotatedDoc parse_timeml(std::string_view markup);

using RelTypeMap = std::map<std::string, Relation>;

/// BEFORE b, AFTER bi, IBEFORE m, IAFTER mi, INCLUDES di, IS_INCLUDED d,
/// SIMULTANEOUS and IDENTITY e, BEGINS s, BEGUN_BY si, ENDS f, ENDED_BY fi.
const RelTypeMap& default_rel_types();

/// One interval per event instance; a TLINK from a to b with relType t
/// intersects the cell a -> b with the image of t. Links touching a TIMEX3
/// are left out. Throws ModelError on a relType missing from the map.
Qcn doc_to_qcn(const AnnotatedDoc& d, const RelTypeMap& m = default_rel_types());

/// ISO 8601 duration such as PT1H30M, in minutes.
Rational parse_iso_duration(std::string_view value);

struct TimemlEncoding {
  HybridNetwork network;
  std::vector<RepetitionMarker> markers;
};

/// doc_to_qcn plus TIMEX3: a DURATION becomes a timer interval of that fixed
/// length, and DURING toward it means the event lasts exactly as long. An
/// event linked to a SET repeats: sporadically inside the event that
/// includes it, else until the state it immediately precedes, else an
/// unknown number of times.
TimemlEncoding doc_to_hybrid(const AnnotatedDoc& d, const RelTypeMap& m = default_rel_types());

}  // namespace proctime
