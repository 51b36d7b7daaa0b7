#include "proctime/dsl.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "proctime/errors.hpp"
#include "text.hpp"

namespace proctime {

namespace {

struct Token {
  enum class Kind { word, string, set, open, close };
  Kind kind;
  std::string text;
};

struct Line {
  std::size_t number = 0;
  Span span;
  std::vector<Token> tokens;
};

[[noreturn]] void fail_at(std::size_t line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message, line);
}

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> lines;
  std::size_t begin = 0;
  for (std::size_t number = 1;; ++number) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::size_t content_end = end;
    if (content_end > begin && text[content_end - 1] == '\r') --content_end;
    const std::string_view raw = text.substr(begin, content_end - begin);

    // The span runs from the first token to the end of the last one.
    Line line{number, {}, {}};
    std::size_t first = 0, last = 0;
    for (std::size_t i = 0; i < raw.size();) {
      const char c = raw[i];
      const std::size_t before = line.tokens.size(), start = i;
      if (detail::is_space(c)) {
        ++i;
      } else if (c == '#') {
        break;
      } else if (c == '"') {
        const std::size_t close = raw.find('"', i + 1);
        if (close == std::string_view::npos) fail_at(number, "unterminated string");
        line.tokens.push_back({Token::Kind::string, std::string(raw.substr(i + 1, close - i - 1))});
        i = close + 1;
      } else if (c == '{') {
        const std::size_t close = raw.find('}', i + 1);
        if (close == std::string_view::npos) {
          line.tokens.push_back({Token::Kind::open, "{"});
          ++i;
        } else {
          line.tokens.push_back({Token::Kind::set, std::string(raw.substr(i, close - i + 1))});
          i = close + 1;
        }
      } else if (c == '}') {
        line.tokens.push_back({Token::Kind::close, "}"});
        ++i;
      } else {
        std::size_t j = i;
        while (j < raw.size() && !detail::is_space(raw[j]) && raw[j] != '"' && raw[j] != '{' && raw[j] != '}' &&
               raw[j] != '#')
          ++j;
        line.tokens.push_back({Token::Kind::word, std::string(raw.substr(i, j - i))});
        i = j;
      }
      if (line.tokens.size() != before) {
        if (before == 0) first = start;
        last = i;
      }
    }
    if (!line.tokens.empty()) {
      line.span = {begin + first, begin + last};
      lines.push_back(std::move(line));
    }
    if (end == text.size()) break;
    begin = end + 1;
  }
  return lines;
}

bool is_modifier(const std::string& w) {
  return w == "meanwhile" || w == "for" || w == "until" || w == "last" || w == "of";
}

std::string first_verb(const std::string& text) {
  // Skip a short leading clause such as "Meanwhile," or "In a large pan,".
  std::string_view rest = text;
  if (auto comma = rest.find(','); comma != std::string_view::npos) {
    const auto head = rest.substr(0, comma);
    if (std::count(head.begin(), head.end(), ' ') < 4) rest = rest.substr(comma + 1);
  }
  const std::string word = detail::slug(detail::trim(rest).substr(0, detail::trim(rest).find(' ')));
  return word;
}

class Parser {
 public:
  enum class Mode { recipe, knowledge };
  explicit Parser(Mode mode) : mode_(mode) {}

  void run(std::string_view text) {
    const std::string header = mode_ == Mode::recipe ? "recipe" : "knowledge";
    bool seen_header = false;
    for (const Line& line : lex(text)) {
      line_ = &line;
      if (!seen_header) {
        if (word(0) != header) fail("no " + header + " header");
        out.title = string(1);
        arity(2);
        seen_header = true;
        continue;
      }
      if (line.tokens[0].kind == Token::Kind::close) {
        if (branch_.empty()) fail("unmatched '}'");
        arity(1);
        alternative().span.end = line.span.end;
        branch_.clear();
        continue;
      }
      directive(word(0));
    }
    if (!seen_header) fail_at(1, "no " + header + " header");
    if (!branch_.empty()) fail_at(alt_line_, "unclosed alt block '" + branch_ + "'");
    check_references();
  }

  Recipe out;
  std::vector<std::string> anchors;
  std::vector<std::string> removals;

 private:
  struct Reference {
    std::string id;
    std::string branch;
    std::size_t line;
  };

  [[noreturn]] void fail(const std::string& message) const { fail_at(line_->number, message); }

  const Token& token(std::size_t i, Token::Kind kind, const char* what) const {
    if (i >= line_->tokens.size() || line_->tokens[i].kind != kind) fail(std::string("expected ") + what);
    return line_->tokens[i];
  }
  const std::string& word(std::size_t i) const { return token(i, Token::Kind::word, "a word").text; }
  const std::string& string(std::size_t i) const { return token(i, Token::Kind::string, "a quoted string").text; }
  void arity(std::size_t n) const {
    if (line_->tokens.size() != n) fail("unexpected '" + line_->tokens[std::min(n, line_->tokens.size() - 1)].text + "'");
  }
  bool recipe_mode() const { return mode_ == Mode::recipe; }
  void recipe_only(const std::string& kw) const {
    if (!recipe_mode()) fail("'" + kw + "' is not allowed in knowledge files");
  }

  AlternativeBranch& alternative() {
    for (auto& a : out.alternatives)
      if (a.id == branch_) return a;
    fail("no alternative '" + branch_ + "'");
  }

  void define(const std::string& id) {
    if (id.empty()) fail("empty id");
    if (!ids_.insert(id).second) fail("duplicate id '" + id + "'");
    owner_[id] = branch_;
    if (!branch_.empty()) alternative().members.push_back(id);
  }

  void refer(const std::string& id) { references_.push_back({id, branch_, line_->number}); }

  DurationPhrase duration(std::size_t& i) const {
    std::string text;
    while (i < line_->tokens.size() && line_->tokens[i].kind == Token::Kind::word && !is_modifier(line_->tokens[i].text))
      text += (text.empty() ? "" : " ") + line_->tokens[i++].text;
    if (text.empty()) fail("expected a duration");
    try {
      return parse_duration(text);
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  std::string state(const std::string& predicate) {
    const std::string id = detail::slug(predicate);
    if (id.empty()) fail("empty state");
    if (auto s = std::find_if(out.states.begin(), out.states.end(), [&](auto& x) { return x.id == id; });
        s != out.states.end()) {
      if (s->predicate != predicate) fail("state '" + predicate + "' clashes with '" + s->predicate + "'");
      return id;
    }
    out.states.push_back({id, predicate, line_->span});
    return id;
  }

  void directive(const std::string& kw) {
    if (kw == "prelim") {
      recipe_only(kw);
      ActionNode a = action(ActionKind::preliminary);
      arity(3);
      define(a.id);
      out.preliminaries.push_back(std::move(a));
    } else if (kw == "step") {
      step();
    } else if (kw == "timer") {
      TimerNode t;
      t.id = word(1);
      std::size_t i = 2;
      t.length = duration(i);
      arity(i);
      t.span = line_->span;
      t.branch = branch_;
      define(t.id);
      out.timers.push_back(std::move(t));
    } else if (kw == "rel") {
      ExplicitRelation r;
      r.a = word(1);
      r.b = word(3);
      arity(4);
      const Token& how = line_->tokens[2];
      if (how.kind == Token::Kind::set) {
        try {
          r.relation = parse_relation(how.text);
        } catch (const ParseError& e) {
          fail(e.what());
        }
        if (r.relation.is_empty()) fail("empty relation");
      } else if (how.kind == Token::Kind::word && connective_relation(how.text)) {
        r.word = how.text;
        r.relation = *connective_relation(how.text);
      } else {
        fail("expected {atoms} or a connective after 'rel " + r.a + "'");
      }
      r.span = line_->span;
      r.branch = branch_;
      refer(r.a);
      refer(r.b);
      out.relations.push_back(std::move(r));
    } else if (kw == "sporadic" || kw == "alternate") {
      recipe_only(kw);
      RepetitionMarker m;
      m.mode = kw == "sporadic" ? RepetitionMarker::Mode::sporadic : RepetitionMarker::Mode::alternation;
      m.target = word(1);
      if (word(2) != (kw == "sporadic" ? "in" : "with")) fail("expected '" + std::string(kw == "sporadic" ? "in" : "with") + "'");
      m.other = word(3);
      arity(4);
      marker(std::move(m));
    } else if (kw == "repeat") {
      recipe_only(kw);
      RepetitionMarker m;
      m.mode = RepetitionMarker::Mode::count;
      m.target = word(1);
      if (line_->tokens.size() > 2 && line_->tokens[2].kind == Token::Kind::word && line_->tokens[2].text == "until") {
        m.until = state(string(3));
        arity(4);
      } else {
        const std::string& n = word(2);
        if (n.empty() || n.size() > 6 || !std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            std::stoul(n) == 0)
          fail("expected 'until' or a positive count");
        m.times = static_cast<unsigned>(std::stoul(n));
        arity(3);
      }
      marker(std::move(m));
    } else if (kw == "alt") {
      recipe_only(kw);
      if (!branch_.empty()) fail("nested alt block");
      AlternativeBranch a;
      a.id = word(1);
      std::size_t i = 2;
      if (i < line_->tokens.size() && line_->tokens[i].kind == Token::Kind::string) a.guard = line_->tokens[i++].text;
      token(i, Token::Kind::open, "'{'");
      arity(i + 1);
      for (const auto& other : out.alternatives)
        if (other.id == a.id) fail("duplicate alternative '" + a.id + "'");
      a.span = line_->span;
      out.alternatives.push_back(std::move(a));
      branch_ = out.alternatives.back().id;
      alt_line_ = line_->number;
    } else if (kw == "anchor" || kw == "remove") {
      if (recipe_mode()) fail("'" + kw + "' is only allowed in knowledge files");
      (kw == "anchor" ? anchors : removals).push_back(word(1));
      arity(2);
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }

  ActionNode action(ActionKind kind) const {
    ActionNode a;
    a.id = word(1);
    a.text = string(2);
    a.verb = first_verb(a.text);
    a.span = line_->span;
    a.kind = kind;
    a.branch = branch_;
    return a;
  }

  void step() {
    ActionNode a = action(ActionKind::step);
    std::size_t i = 3;
    while (i < line_->tokens.size()) {
      const std::string& m = word(i);
      const bool repeated = (m == "meanwhile" && a.meanwhile) || (m == "for" && a.duration) ||
                            (m == "until" && a.until) || (m == "last" && a.last);
      if (repeated) fail("'" + m + "' given twice");
      if (m == "meanwhile") {
        recipe_only(m);
        if (!steps_in_[branch_]) fail("'meanwhile' needs a previous step");
        a.meanwhile = true;
        ++i;
      } else if (m == "for") {
        ++i;
        a.duration = duration(i);
      } else if (m == "until") {
        a.until = state(string(i + 1));
        i += 2;
      } else if (m == "last") {
        recipe_only(m);
        ++i;
        LastOf last{duration(i), {}};
        if (word(i) != "of") fail("expected 'of'");
        last.of = word(i + 1);
        i += 2;
        refer(last.of);
        out.timers.push_back({"timer_" + a.id, last.length, line_->span, a.id, branch_});
        a.last = std::move(last);
      } else {
        fail("unexpected '" + m + "'");
      }
    }
    define(a.id);
    if (a.last) define("timer_" + a.id);
    ++steps_in_[branch_];
    out.steps.push_back(std::move(a));
  }

  void marker(RepetitionMarker m) {
    m.span = line_->span;
    m.branch = branch_;
    refer(m.target);
    if (!m.other.empty()) refer(m.other);
    out.markers.push_back(std::move(m));
  }

  void check_references() const {
    std::set<std::string> states;
    for (const auto& s : out.states) {
      if (ids_.count(s.id)) fail_at(1, "state '" + s.id + "' clashes with a node id");
      states.insert(s.id);
    }
    for (const auto& r : references_) {
      if (std::find(anchors.begin(), anchors.end(), r.id) != anchors.end()) continue;
      if (states.count(r.id)) continue;
      auto owner = owner_.find(r.id);
      if (owner == owner_.end()) fail_at(r.line, "unknown reference '" + r.id + "'");
      if (!owner->second.empty() && owner->second != r.branch)
        fail_at(r.line, "'" + r.id + "' belongs to alternative '" + owner->second + "'");
    }
  }

  Mode mode_;
  const Line* line_ = nullptr;
  std::string branch_;
  std::size_t alt_line_ = 0;
  std::set<std::string> ids_;
  std::map<std::string, std::string> owner_;
  std::map<std::string, int> steps_in_;
  std::vector<Reference> references_;
};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void serialize_branch(const Recipe& r, const std::string& branch, const std::string& indent, std::string& out) {
  for (const auto& a : r.preliminaries)
    if (a.branch == branch) out += indent + "prelim " + a.id + " " + quoted(a.text) + "\n";
  for (const auto& s : r.steps) {
    if (s.branch != branch) continue;
    out += indent + "step " + s.id + " " + quoted(s.text);
    if (s.meanwhile) out += " meanwhile";
    if (s.duration) out += " for " + s.duration->text;
    if (s.until) out += " until " + quoted(r.state(*s.until)->predicate);
    if (s.last) out += " last " + s.last->length.text + " of " + s.last->of;
    out += "\n";
  }
  for (const auto& t : r.timers)
    if (t.branch == branch && t.owner.empty()) out += indent + "timer " + t.id + " " + t.length.text + "\n";
  for (const auto& rel : r.relations)
    if (rel.branch == branch)
      out += indent + "rel " + rel.a + " " + (rel.word.empty() ? to_string(rel.relation) : rel.word) + " " + rel.b + "\n";
  for (const auto& m : r.markers) {
    if (m.branch != branch) continue;
    switch (m.mode) {
      case RepetitionMarker::Mode::sporadic: out += indent + "sporadic " + m.target + " in " + m.other + "\n"; break;
      case RepetitionMarker::Mode::alternation:
        out += indent + "alternate " + m.target + " with " + m.other + "\n";
        break;
      case RepetitionMarker::Mode::count:
        out += indent + "repeat " + m.target + " " +
               (m.times ? std::to_string(*m.times) : "until " + quoted(r.state(m.until)->predicate)) + "\n";
        break;
    }
  }
}

}  // namespace

Recipe parse_recipe_dsl(std::string_view text) {
  Parser p(Parser::Mode::recipe);
  p.run(text);
  return std::move(p.out);
}

std::string serialize(const Recipe& r) {
  std::string out = "recipe " + quoted(r.title) + "\n";
  serialize_branch(r, "", "", out);
  for (const auto& alt : r.alternatives) {
    out += "alt " + alt.id + (alt.guard.empty() ? "" : " " + quoted(alt.guard)) + " {\n";
    serialize_branch(r, alt.id, "  ", out);
    out += "}\n";
  }
  return out;
}

DomainKnowledge parse_knowledge_dsl(std::string_view text, const EncodingOptions& options) {
  Parser p(Parser::Mode::knowledge);
  p.run(text);
  const Recipe& r = p.out;

  DomainKnowledge k;
  k.name = r.title;
  k.anchors = p.anchors;
  k.removals = p.removals;
  std::map<std::string, TaggedConstraint> constraints;
  auto add = [&](TaggedConstraint c) {
    auto [it, fresh] = constraints.emplace(c.id, c);
    if (fresh) return;
    it->second.relation &= c.relation;
    it->second.window = it->second.window.intersect(c.window);
  };
  auto duration = [&](const std::string& id, const Window& w) {
    add(tag_metric(TimePoint::start_of(id).id, TimePoint::end_of(id).id, w, Provenance::domain_hard));
  };

  for (const auto& s : r.steps) {
    k.nodes.push_back({s.id, IntervalKind::action, s.text});
    if (s.until) {
      add(tag_allen(s.id, *s.until, BaseRelation::m, Provenance::domain_hard));
      if (s.duration) duration(s.id, Window(Bound::open(0), Bound::closed(s.duration->hi)));
    } else if (s.duration) {
      duration(s.id, to_window(*s.duration, options));
    }
  }
  for (const auto& s : r.states) k.nodes.push_back({s.id, IntervalKind::state, s.predicate});
  for (const auto& t : r.timers) {
    k.nodes.push_back({t.id, IntervalKind::timer, t.length.text});
    duration(t.id, to_window(t.length, options));
  }
  for (const auto& rel : r.relations) {
    const Relation wanted = rel.word.empty() ? rel.relation : *connective_relation(rel.word, options);
    add(tag_allen(rel.a, rel.b, wanted, Provenance::domain_hard));
  }
  for (auto& [id, c] : constraints) k.constraints.push_back(std::move(c));
  return k;
}

}  // namespace proctime
