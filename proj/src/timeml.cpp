#include "proctime/timeml.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {

using B = BaseRelation;

const TimemlEvent* AnnotatedDoc::event(const std::string& eid) const {
  for (const auto& e : events)
    if (e.eid == eid) return &e;
  return nullptr;
}

const TimemlInstance* AnnotatedDoc::instance(const std::string& eiid) const {
  for (const auto& i : instances)
    if (i.eiid == eiid) return &i;
  return nullptr;
}

const TimemlTimex* AnnotatedDoc::timex(const std::string& tid) const {
  for (const auto& t : timexes)
    if (t.tid == tid) return &t;
  return nullptr;
}

std::string AnnotatedDoc::interval_id(const std::string& eiid) const {
  const TimemlInstance* i = instance(eiid);
  if (!i) return eiid;
  const auto n = std::count_if(instances.begin(), instances.end(),
                               [&](const TimemlInstance& x) { return x.event_id == i->event_id; });
  return n == 1 ? i->event_id : eiid;
}

Rational parse_iso_duration(std::string_view value) {
  const std::string text(value);
  auto fail = [&]() -> Rational { throw ParseError("bad ISO duration '" + text + "'", 0); };
  if (value.size() < 3 || value[0] != 'P') return fail();
  Rational total{0};
  bool in_time = false;
  bool any = false;
  std::size_t i = 1;
  while (i < value.size()) {
    if (value[i] == 'T') {
      if (in_time) return fail();
      in_time = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < value.size() && ((value[j] >= '0' && value[j] <= '9') || value[j] == '.')) ++j;
    if (j == i || j == value.size()) return fail();
    const Rational n = parse_rational(value.substr(i, j - i));
    const char unit = value[j];
    if (!in_time && unit == 'W') total += n * 7 * 24 * 60;
    else if (!in_time && unit == 'D') total += n * 24 * 60;
    else if (in_time && unit == 'H') total += n * 60;
    else if (in_time && unit == 'M') total += n;
    else if (in_time && unit == 'S') total += n / 60;
    else return fail();
    any = true;
    i = j + 1;
  }
  if (!any || total <= 0) return fail();
  return total;
}

namespace {

using Attributes = std::vector<std::pair<std::string, std::string>>;

[[noreturn]] void fail_at(std::size_t offset, const std::string& message) {
  throw ParseError(message + " at byte " + std::to_string(offset), offset);
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == ':' ||
         c == '-';
}

Attributes parse_attributes(std::string_view s, std::size_t base) {
  Attributes out;
  std::size_t i = 0;
  auto skip = [&]() {
    while (i < s.size() && detail::is_space(s[i])) ++i;
  };
  for (;;) {
    skip();
    if (i == s.size()) return out;
    const std::size_t start = i;
    while (i < s.size() && is_name_char(s[i])) ++i;
    if (i == start) fail_at(base + i, "bad attribute");
    const std::string name(s.substr(start, i - start));
    skip();
    if (i == s.size() || s[i] != '=') fail_at(base + i, "expected '=' after " + name);
    ++i;
    skip();
    if (i == s.size() || (s[i] != '"' && s[i] != '\'')) fail_at(base + i, "expected a quoted value for " + name);
    const char quote = s[i];
    const std::size_t close = s.find(quote, i + 1);
    if (close == std::string_view::npos) fail_at(base + i, "unterminated value for " + name);
    for (const auto& [n, _] : out)
      if (n == name) fail_at(base + start, "attribute " + name + " given twice");
    out.emplace_back(name, std::string(s.substr(i + 1, close - i - 1)));
    i = close + 1;
  }
}

std::optional<std::string> attribute(const Attributes& attrs, std::string_view name) {
  for (const auto& [n, v] : attrs)
    if (n == name) return v;
  return std::nullopt;
}

class Reader {
 public:
  explicit Reader(std::string_view markup) : s_(markup) {}

  AnnotatedDoc run() {
    std::size_t i = 0;
    while (i < s_.size()) {
      const char c = s_[i];
      if (c == '<') {
        i = tag(i);
      } else if (c == '&') {
        i = entity(i);
      } else {
        doc_.text += c;
        ++i;
      }
    }
    if (open_) fail_at(open_->offset, "unclosed <" + open_->name + ">");
    resolve();
    return std::move(doc_);
  }

 private:
  struct Open {
    std::string name;
    Attributes attrs;
    std::size_t offset;
    std::size_t text_begin;
  };

  std::size_t skip_past(std::size_t i, std::string_view end) const {
    const std::size_t close = s_.find(end, i);
    if (close == std::string_view::npos) fail_at(i, "unterminated markup");
    return close + end.size();
  }

  std::size_t entity(std::size_t i) {
    static const std::pair<std::string_view, char> entities[] = {
        {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
    for (const auto& [name, ch] : entities) {
      if (s_.substr(i).starts_with(name)) {
        doc_.text += ch;
        return i + name.size();
      }
    }
    fail_at(i, "unknown entity");
  }

  std::size_t tag(std::size_t i) {
    if (s_.substr(i).starts_with("<?")) return skip_past(i, "?>");
    if (s_.substr(i).starts_with("<!--")) return skip_past(i, "-->");
    const std::size_t close = s_.find('>', i);
    if (close == std::string_view::npos) fail_at(i, "unterminated tag");
    std::string_view inner = s_.substr(i + 1, close - i - 1);
    const bool closing = !inner.empty() && inner.front() == '/';
    const bool empty = !inner.empty() && inner.back() == '/';
    if (closing) inner.remove_prefix(1);
    if (empty) inner.remove_suffix(1);
    std::size_t n = 0;
    while (n < inner.size() && is_name_char(inner[n])) ++n;
    const std::string name(inner.substr(0, n));
    if (name.empty()) fail_at(i, "missing tag name");
    const std::size_t attrs_base = i + 1 + (closing ? 1 : 0) + n;

    if (name == "TimeML") return close + 1;
    if (name == "ALINK" || name == "SLINK") fail_at(i, "unsupported tag <" + name + ">");
    const bool container = name == "EVENT" || name == "SIGNAL" || name == "TIMEX3";
    if (!container && name != "MAKEINSTANCE" && name != "TLINK") fail_at(i, "unknown tag <" + name + ">");

    if (closing) {
      if (!open_ || open_->name != name) fail_at(i, "unexpected </" + name + ">");
      finish(*open_, doc_.text.substr(open_->text_begin), {open_->text_begin, doc_.text.size()});
      open_.reset();
      return close + 1;
    }
    if (open_) fail_at(i, "<" + name + "> inside <" + open_->name + ">");
    Attributes attrs = parse_attributes(inner.substr(n), attrs_base);
    if (container) {
      Open o{name, std::move(attrs), i, doc_.text.size()};
      if (empty)
        finish(o, "", {o.text_begin, o.text_begin});
      else
        open_ = std::move(o);
    } else {
      if (!empty) fail_at(i, "<" + name + "> must be an empty tag");
      finish(Open{name, std::move(attrs), i, doc_.text.size()}, "", {});
    }
    return close + 1;
  }

  std::string required(const Open& o, std::string_view attr) const {
    if (auto v = attribute(o.attrs, attr)) return *v;
    fail_at(o.offset, "<" + o.name + "> needs " + std::string(attr));
  }

  void claim(const std::string& id, std::size_t offset) {
    if (id.empty()) fail_at(offset, "empty id");
    if (!ids_.insert(id).second) fail_at(offset, "duplicate id '" + id + "'");
  }

  void finish(const Open& o, std::string text, Span span) {
    if (o.name == "EVENT") {
      TimemlEvent e{required(o, "eid"), required(o, "class"), std::move(text), span, o.offset};
      claim(e.eid, o.offset);
      doc_.events.push_back(std::move(e));
    } else if (o.name == "SIGNAL") {
      TimemlSignal sig{required(o, "sid"), std::move(text), span, o.offset};
      claim(sig.sid, o.offset);
      doc_.signals.push_back(std::move(sig));
    } else if (o.name == "TIMEX3") {
      TimemlTimex t{required(o, "tid"), required(o, "type"), attribute(o.attrs, "value").value_or(""),
                    std::move(text), span, o.offset};
      claim(t.tid, o.offset);
      if (t.type == "DURATION") {
        try {
          parse_iso_duration(required(o, "value"));
        } catch (const ParseError& e) {
          fail_at(o.offset, e.what());
        }
      } else if (t.type != "SET") {
        fail_at(o.offset, "unsupported TIMEX3 type " + t.type);
      }
      doc_.timexes.push_back(std::move(t));
    } else if (o.name == "MAKEINSTANCE") {
      TimemlInstance in{required(o, "eiid"),
                        required(o, "eventID"),
                        attribute(o.attrs, "tense").value_or(""),
                        attribute(o.attrs, "aspect").value_or(""),
                        attribute(o.attrs, "pos").value_or(""),
                        o.offset};
      claim(in.eiid, o.offset);
      doc_.instances.push_back(std::move(in));
    } else {
      TimemlLink l;
      l.lid = attribute(o.attrs, "lid").value_or("");
      if (!l.lid.empty()) claim(l.lid, o.offset);
      l.rel_type = required(o, "relType");
      l.signal = attribute(o.attrs, "signalID").value_or("");
      if (auto v = attribute(o.attrs, "eventInstanceID")) l.source = *v;
      else if (auto t = attribute(o.attrs, "timeID")) l.source = *t;
      else fail_at(o.offset, "<TLINK> needs eventInstanceID or timeID");
      if (auto v = attribute(o.attrs, "relatedToEventInstance")) l.target = *v;
      else if (auto e = attribute(o.attrs, "relatedToEvent")) l.target = *e;
      else if (auto t = attribute(o.attrs, "relatedToTime")) l.target = *t;
      else fail_at(o.offset, "<TLINK> needs relatedToEvent, relatedToEventInstance or relatedToTime");
      l.offset = o.offset;
      doc_.tlinks.push_back(std::move(l));
    }
  }

  // Link ends name an instance or a timex; an event id with a single
  // instance stands for that instance.
  std::string resolve_end(const std::string& id, std::size_t offset) const {
    if (doc_.instance(id) || doc_.timex(id)) return id;
    if (doc_.event(id)) {
      const TimemlInstance* only = nullptr;
      int count = 0;
      for (const auto& in : doc_.instances)
        if (in.event_id == id) {
          only = &in;
          ++count;
        }
      if (count == 1) return only->eiid;
    }
    fail_at(offset, "dangling reference '" + id + "'");
  }

  void resolve() {
    for (const auto& in : doc_.instances)
      if (!doc_.event(in.event_id)) fail_at(in.offset, "dangling reference '" + in.event_id + "'");
    for (auto& l : doc_.tlinks) {
      l.source = resolve_end(l.source, l.offset);
      l.target = resolve_end(l.target, l.offset);
      if (!l.signal.empty() &&
          std::none_of(doc_.signals.begin(), doc_.signals.end(), [&](auto& s) { return s.sid == l.signal; }))
        fail_at(l.offset, "dangling reference '" + l.signal + "'");
    }
  }

  std::string_view s_;
  AnnotatedDoc doc_;
  std::optional<Open> open_;
  std::set<std::string> ids_;
};

}  // namespace

AnnotatedDoc parse_timeml(std::string_view markup) { return Reader(markup).run(); }

const RelTypeMap& default_rel_types() {
  static const RelTypeMap map = {
      {"BEFORE", B::b},    {"AFTER", B::bi},     {"IBEFORE", B::m},       {"IAFTER", B::mi},
      {"INCLUDES", B::di}, {"IS_INCLUDED", B::d}, {"SIMULTANEOUS", B::e}, {"IDENTITY", B::e},
      {"BEGINS", B::s},    {"BEGUN_BY", B::si},  {"ENDS", B::f},          {"ENDED_BY", B::fi},
  };
  return map;
}

namespace {

Relation image(const RelTypeMap& m, const TimemlLink& l) {
  auto it = m.find(l.rel_type);
  if (it == m.end()) throw ModelError("relType " + l.rel_type + " has no Allen image");
  return it->second;
}

}  // namespace

Qcn doc_to_qcn(const AnnotatedDoc& d, const RelTypeMap& m) {
  Qcn q;
  for (const auto& in : d.instances) q.add_variable(d.interval_id(in.eiid));
  for (const auto& l : d.tlinks) {
    if (d.timex(l.source) || d.timex(l.target)) continue;
    q.constrain(d.interval_id(l.source), d.interval_id(l.target), image(m, l));
  }
  return q;
}

TimemlEncoding doc_to_hybrid(const AnnotatedDoc& d, const RelTypeMap& m) {
  TimemlEncoding out;
  HybridNetwork& h = out.network;
  for (const auto& in : d.instances) {
    const TimemlEvent* e = d.event(in.event_id);
    h.add_interval({d.interval_id(in.eiid), e->event_class == "STATE" ? IntervalKind::state : IntervalKind::action,
                    std::string(detail::trim(e->text))});
  }
  for (const auto& t : d.timexes) {
    if (t.type != "DURATION") continue;
    h.add_interval({t.tid, IntervalKind::timer, std::string(detail::trim(t.text))});
    h.duration(t.tid, Window::exactly(parse_iso_duration(t.value)));
  }

  auto is_set = [&](const std::string& id) {
    const TimemlTimex* t = d.timex(id);
    return t && t->type == "SET";
  };
  std::vector<std::string> repeated;
  for (const auto& l : d.tlinks) {
    if (is_set(l.source) || is_set(l.target)) {
      const std::string& e = is_set(l.source) ? l.target : l.source;
      if (!d.timex(e) && std::find(repeated.begin(), repeated.end(), e) == repeated.end()) repeated.push_back(e);
      continue;
    }
    const std::string a = d.timex(l.source) ? l.source : d.interval_id(l.source);
    const std::string b = d.timex(l.target) ? l.target : d.interval_id(l.target);
    const bool with_timex = d.timex(l.source) || d.timex(l.target);
    const Relation r = with_timex && l.rel_type == "DURING" ? Relation(B::e) : image(m, l);
    if (h.relate(a, b, r).is_empty()) throw ModelError("TLINK at byte " + std::to_string(l.offset) + " contradicts earlier links");
  }

  for (const auto& eiid : repeated) {
    RepetitionMarker marker;
    marker.target = d.interval_id(eiid);
    marker.mode = RepetitionMarker::Mode::count;
    for (const auto& l : d.tlinks) {
      const bool inside = (l.source == eiid && l.rel_type == "IS_INCLUDED") || (l.target == eiid && l.rel_type == "INCLUDES");
      const std::string other = l.source == eiid ? l.target : l.source;
      if (inside && d.instance(other)) {
        marker.mode = RepetitionMarker::Mode::sporadic;
        marker.other = d.interval_id(other);
        h.set_sporadic(marker.target);
        break;
      }
    }
    if (marker.mode == RepetitionMarker::Mode::count) {
      for (const auto& l : d.tlinks) {
        if (l.source != eiid || l.rel_type != "IBEFORE" || !d.instance(l.target)) continue;
        if (d.event(d.instance(l.target)->event_id)->event_class == "STATE") {
          marker.until = d.interval_id(l.target);
          break;
        }
      }
    }
    out.markers.push_back(std::move(marker));
  }
  return out;
}

}  // namespace proctime
