#include "proctime/recipe.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {

using B = BaseRelation;

// --------------------------------------------------------------- durations

namespace {

bool is_number_char(char c) { return (c >= '0' && c <= '9') || c == '.' || c == '/'; }

std::optional<Rational> unit_factor(std::string_view unit) {
  static const std::map<std::string_view, Rational> units = {
      {"min", 1},  {"mins", 1}, {"minute", 1}, {"minutes", 1}, {"h", 60},
      {"hr", 60},  {"hrs", 60}, {"hour", 60},  {"hours", 60},
  };
  if (auto it = units.find(unit); it != units.end()) return it->second;
  return std::nullopt;
}

}  // namespace

DurationPhrase parse_duration(std::string_view text) {
  const std::string original(detail::trim(text));
  std::string s;
  for (char c : original) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto fail = [&]() -> DurationPhrase { throw ParseError("bad duration '" + original + "'", 0); };

  DurationPhrase out;
  std::string_view rest = s;
  if (rest.starts_with("about ")) {
    out.about = true;
    rest = detail::trim(rest.substr(6));
  }
  auto take_number = [&]() -> std::optional<Rational> {
    std::size_t n = 0;
    while (n < rest.size() && is_number_char(rest[n])) ++n;
    if (n == 0) return std::nullopt;
    const Rational v = parse_rational(rest.substr(0, n));
    rest = detail::trim(rest.substr(n));
    return v;
  };
  auto first = take_number();
  if (!first) return fail();
  out.lo = out.hi = *first;
  const std::string_view en_dash = "\xE2\x80\x93";
  bool range = false;
  if (rest.starts_with("-")) {
    rest.remove_prefix(1);
    range = true;
  } else if (rest.starts_with(en_dash)) {
    rest.remove_prefix(en_dash.size());
    range = true;
  } else if (rest.starts_with("to ")) {
    rest.remove_prefix(3);
    range = true;
  }
  if (range) {
    rest = detail::trim(rest);
    auto second = take_number();
    if (!second) return fail();
    out.hi = *second;
  }
  const auto factor = unit_factor(rest);
  if (!factor) return fail();
  out.lo *= *factor;
  out.hi *= *factor;
  if (out.lo <= 0 || out.hi < out.lo) return fail();
  out.text = original;
  return out;
}

Window to_window(const DurationPhrase& d, const EncodingOptions& options) {
  if (!d.about) return Window::closed(d.lo, d.hi);
  return Window::closed(d.lo * (1 - options.about_factor), d.hi * (1 + options.about_factor));
}

// ------------------------------------------------------------------ recipe

const ActionNode* Recipe::action(const std::string& id) const {
  for (const auto* list : {&preliminaries, &steps})
    for (const auto& a : *list)
      if (a.id == id) return &a;
  return nullptr;
}

const StateNode* Recipe::state(const std::string& id) const {
  for (const auto& s : states)
    if (s.id == id) return &s;
  return nullptr;
}

const TimerNode* Recipe::timer(const std::string& id) const {
  for (const auto& t : timers)
    if (t.id == id) return &t;
  return nullptr;
}

std::optional<Span> Recipe::span_of(const std::string& id) const {
  if (auto a = action(id)) return a->span;
  if (auto s = state(id)) return s->span;
  if (auto t = timer(id)) return t->span;
  return std::nullopt;
}

std::vector<std::string> Recipe::document_order() const {
  std::vector<std::pair<std::size_t, std::string>> nodes;
  for (const auto* list : {&preliminaries, &steps})
    for (const auto& a : *list) nodes.emplace_back(a.span.begin, a.id);
  for (const auto& s : states) nodes.emplace_back(s.span.begin, s.id);
  for (const auto& t : timers) nodes.emplace_back(t.span.begin, t.id);
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::string> out;
  for (auto& n : nodes) out.push_back(std::move(n.second));
  return out;
}

std::optional<Relation> connective_relation(std::string_view word, const EncodingOptions& options) {
  if (word == "then") return Relation{B::m, B::b};
  if (word == "before") return Relation{B::b};
  if (word == "meanwhile") return options.meanwhile;
  if (word == "sametime") return options.same_time;
  return std::nullopt;
}

// ---------------------------------------------------------------- encoding

namespace {

struct Link {
  const ActionNode* step;
  const ActionNode* previous;
  bool meanwhile;
};

bool linked(const Recipe& r, const ActionNode& s, const ActionNode& p) {
  if (s.last && s.last->of == p.id) return true;
  for (const auto& rel : r.relations)
    if ((rel.a == s.id && rel.b == p.id) || (rel.a == p.id && rel.b == s.id)) return true;
  for (const auto& m : r.markers)
    if (m.mode == RepetitionMarker::Mode::sporadic &&
        ((m.target == s.id && m.other == p.id) || (m.target == p.id && m.other == s.id)))
      return true;
  return false;
}

bool is_sporadic(const Recipe& r, const std::string& id) {
  return std::any_of(r.markers.begin(), r.markers.end(), [&](const RepetitionMarker& m) {
    return m.mode == RepetitionMarker::Mode::sporadic && m.target == id;
  });
}

// Text-order links among the steps of the included branches. Each branch
// chains on its own; sporadic steps hang off their container instead. A
// step after a "meanwhile" group follows every step of the group.
template <class Included>
std::vector<Link> text_order_links(const Recipe& r, Included included) {
  std::vector<Link> links;
  std::map<std::string, std::vector<const ActionNode*>> group;
  for (const auto& s : r.steps) {
    if (!included(s.branch)) continue;
    auto& previous = group[s.branch];
    if (s.meanwhile) {
      if (previous.empty()) throw ModelError("step '" + s.id + "' is 'meanwhile' with no previous step");
      links.push_back({&s, previous.back(), true});
    } else {
      for (const ActionNode* p : previous)
        if (!linked(r, s, *p)) links.push_back({&s, p, false});
    }
    if (is_sporadic(r, s.id)) continue;
    if (!s.meanwhile) previous.clear();
    previous.push_back(&s);
  }
  return links;
}

class Encoder {
 public:
  Encoder(const Recipe& r, const std::set<std::string>& chosen, const EncodingOptions& o)
      : r_(r), chosen_(chosen), o_(o) {}

  HybridNetwork run() {
    for (const auto& a : r_.preliminaries)
      if (included(a.branch)) h_.add_interval({a.id, IntervalKind::action, a.text});
    for (const auto& s : r_.steps)
      if (included(s.branch)) h_.add_interval({s.id, IntervalKind::action, s.text});
    for (const auto& st : r_.states)
      if (referenced(st.id)) h_.add_interval({st.id, IntervalKind::state, st.predicate});
    for (const auto& t : r_.timers)
      if (included(t.branch)) h_.add_interval({t.id, IntervalKind::timer, t.length.text});

    const ActionNode* first = nullptr;
    for (const auto& s : r_.steps)
      if (s.branch.empty()) {
        first = &s;
        break;
      }
    if (first)
      for (const auto& a : r_.preliminaries)
        if (included(a.branch)) relate(a.id, first->id, B::b);

    for (const auto& link : text_order_links(r_, [this](const std::string& b) { return included(b); }))
      relate(link.step->id, link.previous->id, link.meanwhile ? o_.meanwhile : Relation{B::bi, B::mi});

    for (const auto& s : r_.steps) {
      if (!included(s.branch)) continue;
      if (s.until) {
        relate(s.id, *s.until, B::m);
        if (s.duration) duration(s.id, Window(Bound::open(0), Bound::closed(s.duration->hi)));
      } else if (s.duration) {
        duration(s.id, to_window(*s.duration, o_));
      }
      if (s.last) {
        const TimerNode* t = timer_of(s.id);
        relate(t->id, s.last->of, B::f);
        relate(s.id, t->id, B::s);
      }
    }
    for (const auto& t : r_.timers)
      if (included(t.branch)) duration(t.id, to_window(t.length, o_));

    for (const auto& rel : r_.relations) {
      if (!included(rel.branch)) continue;
      Relation wanted = rel.relation;
      if (!rel.word.empty()) {
        auto word = connective_relation(rel.word, o_);
        if (!word) throw ModelError("unknown connective '" + rel.word + "'");
        wanted = *word;
      }
      if (relate(rel.a, rel.b, wanted).is_empty())
        throw ModelError("relation " + rel.a + " " + to_string(wanted) + " " + rel.b +
                         " contradicts earlier constraints");
    }

    for (const auto& m : r_.markers) {
      if (!included(m.branch)) continue;
      require(m.target);
      switch (m.mode) {
        case RepetitionMarker::Mode::sporadic:
          relate(m.other, m.target, B::di);
          h_.set_sporadic(m.target);
          break;
        case RepetitionMarker::Mode::alternation:
          require(m.other);
          break;
        case RepetitionMarker::Mode::count:
          if (!m.until.empty()) relate(m.target, m.until, B::m);
          break;
      }
    }
    return std::move(h_);
  }

 private:
  bool included(const std::string& branch) const { return branch.empty() || chosen_.count(branch); }

  bool referenced(const std::string& state) const {
    for (const auto& s : r_.steps)
      if (included(s.branch) && s.until == state) return true;
    for (const auto& m : r_.markers)
      if (included(m.branch) && m.until == state) return true;
    return false;
  }

  const TimerNode* timer_of(const std::string& step) const {
    for (const auto& t : r_.timers)
      if (t.owner == step) return &t;
    throw ModelError("no timer for step '" + step + "'");
  }

  void require(const std::string& id) const {
    if (!h_.find_interval(id)) throw ModelError("unknown id '" + id + "'");
  }

  Relation relate(const std::string& a, const std::string& b, Relation rel) {
    require(a);
    require(b);
    return h_.relate(a, b, rel);
  }

  void duration(const std::string& id, const Window& w) {
    require(id);
    h_.duration(id, w);
  }

  const Recipe& r_;
  const std::set<std::string>& chosen_;
  const EncodingOptions& o_;
  HybridNetwork h_;
};

}  // namespace

std::vector<Scenario> encode_recipe(const Recipe& r, const EncodingOptions& options) {
  std::vector<std::string> branches;
  for (const auto& alt : r.alternatives) branches.push_back(alt.id);
  std::sort(branches.begin(), branches.end());
  if (branches.size() > 16) throw ScaleError("more than 16 alternatives");

  std::vector<Scenario> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << branches.size()); ++mask) {
    std::set<std::string> chosen;
    std::string label;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (!(mask >> i & 1u)) continue;
      chosen.insert(branches[i]);
      label += (label.empty() ? "" : "+") + branches[i];
    }
    out.push_back({label.empty() ? "base" : label, Encoder(r, chosen, options).run()});
  }
  return out;
}

// --------------------------------------------------------------- coverage

std::string_view name_of(Phenomenon p) {
  switch (p) {
    case Phenomenon::qualitative_duration: return "qualitative duration";
    case Phenomenon::precise_quantitative_duration: return "precise quantitative duration";
    case Phenomenon::imprecise_quantitative_duration: return "imprecise quantitative duration";
    case Phenomenon::total_order: return "total order";
    case Phenomenon::partial_order: return "partial order";
    case Phenomenon::simultaneity: return "simultaneity";
    case Phenomenon::indeterminate_repetition: return "indeterminate repetition";
    case Phenomenon::alternation: return "alternation";
    case Phenomenon::sporadic_repetition: return "sporadic repetition";
    case Phenomenon::exclusive_disjunction: return "exclusive disjunction";
  }
  return "?";
}

std::set<Phenomenon> phenomena_coverage(const Recipe& r) {
  std::set<Phenomenon> out;
  auto duration = [&](const DurationPhrase& d) {
    out.insert(d.about || d.lo != d.hi ? Phenomenon::imprecise_quantitative_duration
                                       : Phenomenon::precise_quantitative_duration);
  };
  for (const auto& s : r.steps) {
    if (s.duration) duration(*s.duration);
    if (s.until) out.insert(Phenomenon::qualitative_duration);
  }
  for (const auto& t : r.timers) duration(t.length);

  bool meanwhile = false;
  for (const auto& link : text_order_links(r, [](const std::string&) { return true; })) {
    out.insert(link.meanwhile ? Phenomenon::simultaneity : Phenomenon::total_order);
    meanwhile = meanwhile || link.meanwhile;
  }
  if (meanwhile || r.preliminaries.size() >= 2) out.insert(Phenomenon::partial_order);

  const Relation overlapping{B::o, B::oi, B::d, B::di, B::s, B::si, B::f, B::fi, B::e};
  for (const auto& rel : r.relations) {
    const Relation resolved = rel.word.empty() ? rel.relation : connective_relation(rel.word).value_or(Relation::full());
    if (resolved.subset_of(overlapping)) out.insert(Phenomenon::simultaneity);
  }

  for (const auto& m : r.markers) {
    switch (m.mode) {
      case RepetitionMarker::Mode::sporadic: out.insert(Phenomenon::sporadic_repetition); break;
      case RepetitionMarker::Mode::alternation: out.insert(Phenomenon::alternation); break;
      case RepetitionMarker::Mode::count:
        if (!m.times) out.insert(Phenomenon::indeterminate_repetition);
        if (!m.until.empty()) out.insert(Phenomenon::qualitative_duration);
        break;
    }
  }
  if (!r.alternatives.empty()) out.insert(Phenomenon::exclusive_disjunction);
  return out;
}

}  // namespace proctime
