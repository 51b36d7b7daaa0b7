#include "proctime/adaptation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "proctime/errors.hpp"

namespace proctime {

namespace {

// Owning interval of a point id, or the id itself for anonymous points.
std::string owner_of(const std::string& point) {
  for (const char* prefix : {"start(", "end("}) {
    const std::string p(prefix);
    if (point.starts_with(p) && point.ends_with(")")) return point.substr(p.size(), point.size() - p.size() - 1);
  }
  return point;
}

bool same_interval_pair(const std::string& a, const std::string& b) {
  return owner_of(a) == owner_of(b) && a != b && owner_of(a) != a;
}

}  // namespace

TaggedConstraint tag_allen(const std::string& a, const std::string& b, Relation r, Provenance p) {
  TaggedConstraint c;
  c.layer = Layer::allen;
  c.provenance = p;
  if (b < a) {
    c.from = b;
    c.to = a;
    c.relation = converse(r);
  } else {
    c.from = a;
    c.to = b;
    c.relation = r;
  }
  c.id = "allen:" + c.from + "|" + c.to;
  return c;
}

TaggedConstraint tag_metric(const std::string& from, const std::string& to, const Window& w, Provenance p) {
  TaggedConstraint c;
  c.layer = Layer::metric;
  c.provenance = p;
  bool swap = to < from;
  if (same_interval_pair(from, to)) swap = from.starts_with("end(");
  c.from = swap ? to : from;
  c.to = swap ? from : to;
  c.window = swap ? w.negated() : w;
  c.id = "metric:" + c.from + "|" + c.to;
  return c;
}

std::string payload_text(const TaggedConstraint& c) {
  return c.layer == Layer::allen ? to_string(c.relation) : to_string(c.window);
}

std::vector<TaggedConstraint> constraints_of(const HybridNetwork& h, Provenance p) {
  std::vector<TaggedConstraint> out;
  const Qcn& q = h.qcn();
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (!q.at(i, j).is_full()) out.push_back(tag_allen(q.id(i), q.id(j), q.at(i, j), p));
  const Stp& s = h.stp();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Window w = s.window(i, j);
      if (w.is_any()) continue;
      const auto& a = s.point(i);
      const auto& b = s.point(j);
      if (a.role != PointRole::anonymous && a.interval == b.interval) {
        const Window duration = a.role == PointRole::start ? w : w.negated();
        if (duration == Window::positive()) continue;
      }
      out.push_back(tag_metric(a.id, b.id, w, p));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  return out;
}

HybridNetwork skeleton_of(const HybridNetwork& h) {
  HybridNetwork out;
  for (const auto& info : h.intervals()) out.add_interval(info);
  for (const auto& p : h.stp().points())
    if (p.role == PointRole::anonymous) out.add_point(p.id);
  return out;
}

HybridNetwork assemble(const HybridNetwork& skeleton, const std::vector<TaggedConstraint>& constraints) {
  HybridNetwork out = skeleton;
  for (const auto& c : constraints) {
    if (c.layer == Layer::allen)
      out.relate(c.from, c.to, c.relation);
    else
      out.bound(c.from, c.to, c.window);
  }
  return out;
}

TaggedNetwork inject(const HybridNetwork& h, const DomainKnowledge& k) {
  for (const auto& a : k.anchors)
    if (!h.find_interval(a)) throw ModelError("unresolved anchor '" + a + "'");
  TaggedNetwork t;
  t.skeleton = skeleton_of(h);
  for (const auto& node : k.nodes) {
    if (t.skeleton.find_interval(node.id)) throw ModelError("knowledge node '" + node.id + "' already exists");
    t.skeleton.add_interval(node);
    t.injected.push_back(node);
  }
  t.constraints = constraints_of(h, Provenance::recipe_soft);
  std::set<std::string> soft_ids;
  for (const auto& c : t.constraints) soft_ids.insert(c.id);
  for (auto c : k.constraints) {
    c.provenance = Provenance::domain_hard;
    if (soft_ids.count(c.id)) c.id += ":hard";
    t.constraints.push_back(std::move(c));
  }
  std::sort(t.constraints.begin(), t.constraints.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  for (std::size_t i = 1; i < t.constraints.size(); ++i)
    if (t.constraints[i].id == t.constraints[i - 1].id)
      throw ModelError("constraint '" + t.constraints[i].id + "' given twice");
  return t;
}

TaggedNetwork prepare_adaptation(const HybridNetwork& h, const DomainKnowledge& k) {
  TaggedNetwork t = inject(remove_entities(h, k.removals), k);
  t.removed = k.removals;
  return t;
}

// ---------------------------------------------------------------- revision

namespace {

// Groups constraints by connected sets of intervals (anonymous points count
// as their own node).
std::vector<std::vector<std::size_t>> components(const std::vector<TaggedConstraint>& cs) {
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> root = [&](const std::string& x) -> std::string {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return parent[x] = x;
    return it->second = root(it->second);
  };
  auto node = [](const TaggedConstraint& c, const std::string& end) {
    return c.layer == Layer::allen ? end : owner_of(end);
  };
  for (const auto& c : cs) {
    const std::string a = root(node(c, c.from)), b = root(node(c, c.to));
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cs.size(); ++i) groups[root(node(cs[i], cs[i].from))].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

class Search {
 public:
  Search(const HybridNetwork& skeleton, std::vector<TaggedConstraint> hard, std::vector<TaggedConstraint> soft)
      : skeleton_(skeleton), hard_(std::move(hard)), soft_(std::move(soft)) {}

  std::vector<bool> run() {
    std::vector<bool> chosen(soft_.size(), false);
    dfs(0, chosen, 0);
    return best_;
  }

 private:
  bool consistent(const std::vector<bool>& chosen) const {
    std::vector<TaggedConstraint> all = hard_;
    for (std::size_t i = 0; i < soft_.size(); ++i)
      if (chosen[i]) all.push_back(soft_[i]);
    return hybrid_consistent(assemble(skeleton_, all));
  }

  void dfs(std::size_t k, std::vector<bool>& chosen, std::size_t count) {
    if (best_count_ && count + (soft_.size() - k) <= *best_count_) return;
    if (k == soft_.size()) {
      best_ = chosen;
      best_count_ = count;
      return;
    }
    chosen[k] = true;
    if (consistent(chosen)) dfs(k + 1, chosen, count + 1);
    chosen[k] = false;
    dfs(k + 1, chosen, count);
  }

  const HybridNetwork& skeleton_;
  std::vector<TaggedConstraint> hard_;
  std::vector<TaggedConstraint> soft_;
  std::optional<std::size_t> best_count_;
  std::vector<bool> best_;
};

}  // namespace

RevisionResult revise(const TaggedNetwork& t) {
  std::vector<TaggedConstraint> hard;
  for (const auto& c : t.constraints)
    if (c.provenance == Provenance::domain_hard) hard.push_back(c);
  if (!hybrid_consistent(assemble(t.skeleton, hard)))
    throw ModelError("domain knowledge is inconsistent on its own");

  std::set<std::string> relaxed;
  for (const auto& group : components(t.constraints)) {
    std::vector<TaggedConstraint> group_hard, group_soft;
    for (std::size_t i : group)
      (t.constraints[i].provenance == Provenance::domain_hard ? group_hard : group_soft).push_back(t.constraints[i]);
    std::vector<TaggedConstraint> all = group_hard;
    all.insert(all.end(), group_soft.begin(), group_soft.end());
    if (hybrid_consistent(assemble(t.skeleton, all))) continue;
    if (group_soft.size() > kReviseMaxSoft)
      throw ScaleError(std::to_string(group_soft.size()) + " soft constraints in one conflict, limit " +
                       std::to_string(kReviseMaxSoft));
    const auto keep = Search(t.skeleton, group_hard, group_soft).run();
    for (std::size_t i = 0; i < group_soft.size(); ++i)
      if (!keep[i]) relaxed.insert(group_soft[i].id);
  }

  RevisionResult r;
  r.constraints = t.constraints;
  r.removed = t.removed;
  r.injected = t.injected;
  std::vector<TaggedConstraint> kept;
  for (const auto& c : t.constraints) {
    if (relaxed.count(c.id)) {
      r.relaxed.push_back(c.id);
      continue;
    }
    if (c.provenance == Provenance::recipe_soft) r.retained.push_back(c.id);
    kept.push_back(c);
  }
  r.network = assemble(t.skeleton, kept);
  auto solution = hybrid_solve(r.network);
  if (!solution) throw ModelError("revision left an inconsistent network");
  r.scenario = std::move(solution->scenario);
  return r;
}

std::string serialize(const RevisionResult& r) {
  std::string out;
  const std::set<std::string> relaxed(r.relaxed.begin(), r.relaxed.end());
  for (const char* group : {"hard", "retained", "relaxed"}) {
    for (const auto& c : r.constraints) {
      const char* g = c.provenance == Provenance::domain_hard ? "hard" : relaxed.count(c.id) ? "relaxed" : "retained";
      if (std::string_view(g) == group) out += std::string(g) + " " + c.id + " " + payload_text(c) + "\n";
    }
  }
  return out;
}

// ------------------------------------------------------------------- edits

std::string_view name_of(TextEdit::Op op) {
  switch (op) {
    case TextEdit::Op::remove: return "delete";
    case TextEdit::Op::insert_after: return "insert-after";
    case TextEdit::Op::flag_review: return "flag-review";
  }
  return "?";
}

std::vector<TextEdit> adapt_text_edits(const RevisionResult& r, const Recipe& source) {
  std::vector<TextEdit> edits;
  for (const auto& id : r.removed)
    if (auto span = source.span_of(id)) edits.push_back({*span, TextEdit::Op::remove, {}});

  std::vector<const IntervalInfo*> inserted;
  for (const auto& node : r.injected)
    if (node.kind == IntervalKind::action) inserted.push_back(&node);
  if (!inserted.empty()) {
    // Surviving recipe actions in document order.
    std::vector<const ActionNode*> actions;
    for (const auto* list : {&source.preliminaries, &source.steps})
      for (const auto& a : *list)
        if (r.network.find_interval(a.id)) actions.push_back(&a);
    std::stable_sort(actions.begin(), actions.end(),
                     [](const auto* x, const auto* y) { return x->span.begin < y->span.begin; });
    if (!actions.empty()) {
      const auto closed = hybrid_close(r.network);
      const Relation before{BaseRelation::b, BaseRelation::m};
      std::size_t target = actions.size();
      for (std::size_t i = 0; i < actions.size() && target == actions.size(); ++i)
        for (const auto* node : inserted)
          if (closed.network.qcn().at(node->id, actions[i]->id).subset_of(before)) {
            target = i;
            break;
          }
      Span at;
      if (target == actions.size())
        at = actions.back()->span;
      else if (target == 0)
        at = {actions[0]->span.begin, actions[0]->span.begin};
      else
        at = actions[target - 1]->span;
      for (const auto* node : inserted) edits.push_back({at, TextEdit::Op::insert_after, node->label});
    }
  }

  for (const auto& id : r.relaxed) {
    const auto c = std::find_if(r.constraints.begin(), r.constraints.end(), [&](auto& x) { return x.id == id; });
    std::optional<Span> hull;
    for (const auto& end : {c->from, c->to}) {
      auto span = source.span_of(c->layer == Layer::allen ? end : owner_of(end));
      if (!span) continue;
      hull = hull ? Span{std::min(hull->begin, span->begin), std::max(hull->end, span->end)} : *span;
    }
    if (hull) edits.push_back({*hull, TextEdit::Op::flag_review, id});
  }

  std::stable_sort(edits.begin(), edits.end(), [](const TextEdit& x, const TextEdit& y) {
    if (x.span.begin != y.span.begin) return x.span.begin < y.span.begin;
    if (x.span.end != y.span.end) return x.span.end < y.span.end;
    return static_cast<int>(x.op) < static_cast<int>(y.op);
  });
  return edits;
}

std::string serialize(const std::vector<TextEdit>& edits) {
  std::string out;
  for (const auto& e : edits) {
    out += std::to_string(e.span.begin) + ".." + std::to_string(e.span.end) + " " + std::string(name_of(e.op));
    if (e.op == TextEdit::Op::insert_after) out += " \"" + e.payload + "\"";
    if (e.op == TextEdit::Op::flag_review) out += " " + e.payload;
    out += "\n";
  }
  return out;
}

}  // namespace proctime
