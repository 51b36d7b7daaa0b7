#include "proctime/workflow.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "proctime/errors.hpp"

namespace proctime {

using Kind = WorkflowNode::Kind;

const WorkflowNode* WorkflowGraph::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::vector<std::string> WorkflowGraph::successors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.from == id) out.push_back(e.to);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> WorkflowGraph::predecessors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.to == id) out.push_back(e.from);
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view name_of(WorkflowNode::Kind k) {
  switch (k) {
    case Kind::source: return "source";
    case Kind::sink: return "sink";
    case Kind::action: return "action";
    case Kind::and_split: return "and-split";
    case Kind::and_join: return "and-join";
    case Kind::xor_split: return "xor-split";
    case Kind::xor_join: return "xor-join";
    case Kind::loop: return "loop";
    case Kind::no_op: return "no-op";
  }
  return "?";
}

namespace {

const Relation kBefore{BaseRelation::b, BaseRelation::m};

Qcn closed_qcn(const HybridNetwork& h) {
  auto closed = hybrid_close(h);
  if (!closed.consistent) throw ModelError("workflow of an inconsistent network");
  return closed.network.qcn();
}

using Matrix = std::vector<std::vector<bool>>;

// Transitive reduction of a strict order given as a matrix.
std::vector<std::pair<std::size_t, std::size_t>> reduce(Matrix reach) {
  const std::size_t n = reach.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) throw ModelError("cyclic precedence");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!reach[i][j]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k) direct = !(reach[i][k] && reach[k][j]);
      if (direct) out.emplace_back(i, j);
    }
  return out;
}

std::vector<std::string> sorted_actions(const HybridNetwork& h) {
  std::vector<std::string> out;
  for (const auto& info : h.intervals())
    if (info.kind == IntervalKind::action) out.push_back(info.id);
  std::sort(out.begin(), out.end());
  return out;
}

// Work graph of one scenario before it is merged into the result.
class Local {
 public:
  Local(std::string prefix, std::string source, std::string sink) : prefix_(std::move(prefix)) {
    source_ = source;
    sink_ = sink;
  }

  std::map<std::string, WorkflowNode> nodes;  // excluding source and sink
  std::set<std::pair<std::string, std::string>> edges;

  const std::string& source() const { return source_; }
  const std::string& sink() const { return sink_; }
  std::string id(const std::string& local) const { return prefix_ + local; }

  std::set<std::string> preds(const std::string& n) const {
    std::set<std::string> out;
    for (const auto& [a, b] : edges)
      if (b == n) out.insert(a);
    return out;
  }
  std::set<std::string> succs(const std::string& n) const {
    std::set<std::string> out;
    for (const auto& [a, b] : edges)
      if (a == n) out.insert(b);
    return out;
  }

  Kind kind(const std::string& n) const {
    if (n == source_) return Kind::source;
    if (n == sink_) return Kind::sink;
    return nodes.at(n).kind;
  }

  std::string gateway(Kind k) {
    const std::string name = k == Kind::and_split ? "and_split_" : "and_join_";
    const std::string n = id(name + std::to_string(++counter_[k]));
    nodes[n] = {n, k, "", {}, {}, {}, {}};
    return n;
  }

  // Groups of actions sharing their predecessors and successors become
  // parallel bands between a split and a join.
  void bands() {
    for (;;) {
      std::map<std::pair<std::set<std::string>, std::set<std::string>>, std::vector<std::string>> groups;
      for (const auto& [n, node] : nodes)
        if (node.parent.empty() && (node.kind == Kind::action || node.kind == Kind::loop))
          groups[{preds(n), succs(n)}].push_back(n);
      const std::map<std::string, std::size_t> rank = ranks();
      const std::vector<std::string>* best = nullptr;
      const std::set<std::string>* best_preds = nullptr;
      const std::set<std::string>* best_succs = nullptr;
      for (const auto& [key, members] : groups) {
        if (members.size() < 2 || already_band(key.first, key.second)) continue;
        if (!best || rank.at(members.front()) < rank.at(best->front())) {
          best = &members;
          best_preds = &key.first;
          best_succs = &key.second;
        }
      }
      if (!best) return;
      const std::string split = gateway(Kind::and_split);
      counter_[Kind::and_join] = counter_[Kind::and_split] - 1;
      const std::string join = gateway(Kind::and_join);
      for (const auto& p : *best_preds) {
        for (const auto& g : *best) edges.erase({p, g});
        edges.insert({p, split});
      }
      for (const auto& s : *best_succs) {
        for (const auto& g : *best) edges.erase({g, s});
        edges.insert({join, s});
      }
      for (const auto& g : *best) {
        edges.insert({split, g});
        edges.insert({g, join});
      }
    }
  }

  // Whatever still fans out or in gets its own gateway.
  void gateways() {
    std::vector<std::string> all{source_, sink_};
    for (const auto& [n, _] : nodes) all.push_back(n);
    std::sort(all.begin(), all.end());
    counter_[Kind::and_join] = counter_[Kind::and_split] = std::max(counter_[Kind::and_join], counter_[Kind::and_split]);
    for (const auto& n : all) {
      if (kind(n) != Kind::and_split && succs(n).size() > 1) {
        const std::string split = gateway(Kind::and_split);
        for (const auto& s : succs(n)) {
          edges.erase({n, s});
          edges.insert({split, s});
        }
        edges.insert({n, split});
      }
      if (kind(n) != Kind::and_join && preds(n).size() > 1) {
        const std::string join = gateway(Kind::and_join);
        for (const auto& p : preds(n)) {
          edges.erase({p, n});
          edges.insert({p, join});
        }
        edges.insert({join, n});
      }
    }
  }

 private:
  bool already_band(const std::set<std::string>& preds, const std::set<std::string>& succs) const {
    return preds.size() == 1 && succs.size() == 1 && kind(*preds.begin()) == Kind::and_split &&
           kind(*succs.begin()) == Kind::and_join;
  }

  // Longest distance from the source.
  std::map<std::string, std::size_t> ranks() const {
    std::map<std::string, std::size_t> rank{{source_, 0}};
    std::vector<std::string> frontier{source_};
    while (!frontier.empty()) {
      std::vector<std::string> next;
      for (const auto& n : frontier)
        for (const auto& s : succs(n))
          if (!rank.count(s) || rank[s] < rank[n] + 1) {
            rank[s] = rank[n] + 1;
            next.push_back(s);
          }
      frontier = std::move(next);
    }
    return rank;
  }

  std::string prefix_;
  std::string source_;
  std::string sink_;
  std::map<Kind, int> counter_;
};

void build(Local& local, const HybridNetwork& h, const std::vector<RepetitionMarker>& markers) {
  const Qcn q = closed_qcn(h);
  const std::vector<std::string> actions = sorted_actions(h);

  // Units: single actions, or loops that absorb one or two actions.
  std::map<std::string, std::string> unit_of;
  std::map<std::string, std::vector<std::string>> members;
  auto label_of = [&](const std::string& id) { return h.interval(*h.find_interval(id)).label; };
  for (const auto& m : markers) {
    if (!h.find_interval(m.target) || unit_of.count(m.target)) continue;
    if (m.mode == RepetitionMarker::Mode::alternation && (!h.find_interval(m.other) || unit_of.count(m.other)))
      continue;
    WorkflowNode loop;
    loop.id = local.id("loop_" + m.target);
    loop.kind = Kind::loop;
    loop.mode = m.mode;
    loop.label = label_of(m.target);
    auto body_action = [&](const std::string& a) {
      const std::string b = loop.id + "/" + a;
      local.nodes[b] = {b, Kind::action, label_of(a), loop.id, {}, {}, {}};
      loop.body.push_back(b);
      unit_of[a] = loop.id;
      members[loop.id].push_back(a);
    };
    body_action(m.target);
    switch (m.mode) {
      case RepetitionMarker::Mode::sporadic: {
        const std::string noop = loop.id + "/noop";
        local.nodes[noop] = {noop, Kind::no_op, "no-op", loop.id, {}, {}, {}};
        loop.body.push_back(noop);
        break;
      }
      case RepetitionMarker::Mode::alternation:
        body_action(m.other);
        break;
      case RepetitionMarker::Mode::count:
        if (!m.until.empty())
          loop.guard = "until " + (h.find_interval(m.until) ? label_of(m.until) : m.until);
        else if (m.times)
          loop.guard = std::to_string(*m.times) + " times";
        break;
    }
    local.nodes[loop.id] = loop;
  }
  for (const auto& a : actions) {
    if (unit_of.count(a)) continue;
    const std::string n = local.id(a);
    local.nodes[n] = {n, Kind::action, label_of(a), {}, {}, {}, {}};
    unit_of[a] = n;
    members[n].push_back(a);
  }

  std::vector<std::string> units;
  for (const auto& [u, _] : members) units.push_back(u);
  Matrix prec(units.size(), std::vector<bool>(units.size(), false));
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = 0; j < units.size(); ++j) {
      if (i == j) continue;
      bool all = true;
      for (const auto& a : members[units[i]])
        for (const auto& b : members[units[j]]) {
          const Relation c = q.at(a, b);
          all = all && !c.is_empty() && c.subset_of(kBefore);
        }
      prec[i][j] = all;
    }
  for (auto [i, j] : reduce(prec)) local.edges.insert({units[i], units[j]});
  for (const auto& u : units) {
    if (local.preds(u).empty()) local.edges.insert({local.source(), u});
    if (local.succs(u).empty()) local.edges.insert({u, local.sink()});
  }
  if (units.empty()) local.edges.insert({local.source(), local.sink()});
  local.bands();
  local.gateways();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string attributes(const WorkflowNode& n) {
  switch (n.kind) {
    case Kind::source: return "shape=circle, label=\"start\"";
    case Kind::sink: return "shape=doublecircle, label=\"end\"";
    case Kind::action: return "label=" + quote(n.label);
    case Kind::and_split:
    case Kind::and_join: return "shape=rect, style=filled, fillcolor=black, label=\"\", width=0.1, height=0.8";
    case Kind::xor_split:
    case Kind::xor_join: return "shape=diamond, label=\"X\"";
    case Kind::loop: return "shape=diamond, label=\"loop\"";
    case Kind::no_op: return "shape=plaintext, label=\"no-op\"";
  }
  return {};
}

std::string_view mode_name(RepetitionMarker::Mode m) {
  switch (m) {
    case RepetitionMarker::Mode::sporadic: return "sporadic";
    case RepetitionMarker::Mode::alternation: return "alternation";
    case RepetitionMarker::Mode::count: return "count";
  }
  return "?";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> precedence_edges(const HybridNetwork& h) {
  const Qcn q = closed_qcn(h);
  const std::vector<std::string> actions = sorted_actions(h);
  Matrix prec(actions.size(), std::vector<bool>(actions.size(), false));
  for (std::size_t i = 0; i < actions.size(); ++i)
    for (std::size_t j = 0; j < actions.size(); ++j) {
      const Relation c = q.at(actions[i], actions[j]);
      prec[i][j] = i != j && !c.is_empty() && c.subset_of(kBefore);
    }
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [i, j] : reduce(prec)) out.emplace_back(actions[i], actions[j]);
  return out;
}

WorkflowGraph to_workflow(const std::vector<Scenario>& scenarios, const std::vector<RepetitionMarker>& markers) {
  WorkflowGraph g;
  g.nodes.push_back({"source", Kind::source, "", {}, {}, {}, {}});
  g.nodes.push_back({"sink", Kind::sink, "", {}, {}, {}, {}});
  auto merge = [&](const Local& local, const std::string& branch_label) {
    for (const auto& [_, n] : local.nodes) g.nodes.push_back(n);
    for (const auto& [a, b] : local.edges)
      g.edges.push_back({a, b, a == local.source() && !branch_label.empty() ? branch_label : ""});
  };

  if (scenarios.empty()) {
    g.edges.push_back({"source", "sink", ""});
  } else if (scenarios.size() == 1) {
    Local local("", "source", "sink");
    build(local, scenarios[0].network, markers);
    merge(local, "");
  } else {
    g.nodes.push_back({"xor_split", Kind::xor_split, "", {}, {}, {}, {}});
    g.nodes.push_back({"xor_join", Kind::xor_join, "", {}, {}, {}, {}});
    g.edges.push_back({"source", "xor_split", ""});
    g.edges.push_back({"xor_join", "sink", ""});
    for (const auto& s : scenarios) {
      Local local(s.label + ".", "xor_split", "xor_join");
      build(local, s.network, markers);
      merge(local, s.label);
    }
  }
  std::sort(g.nodes.begin(), g.nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.to, a.label) < std::tie(b.from, b.to, b.label);
  });
  return g;
}

std::string emit_dot(const WorkflowGraph& w) {
  std::string out = "digraph workflow {\n  rankdir=LR;\n  node [shape=box];\n";
  std::vector<const WorkflowNode*> nodes;
  for (const auto& n : w.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const auto* n : nodes) {
    if (!n->parent.empty()) continue;
    if (n->kind != Kind::loop) {
      out += "  " + quote(n->id) + " [" + attributes(*n) + "];\n";
      continue;
    }
    out += "  subgraph " + quote("cluster_" + n->id) + " {\n";
    out += "    label=" + quote(std::string(mode_name(n->mode))) + ";\n";
    out += "    " + quote(n->id) + " [" + attributes(*n) + "];\n";
    std::vector<std::string> body = n->body;
    std::sort(body.begin(), body.end());
    for (const auto& b : body) out += "    " + quote(b) + " [" + attributes(*w.node(b)) + "];\n";
    const std::string repeat = n->guard.empty() ? "repeat" : "repeat " + n->guard;
    auto back = [&](const std::string& from) {
      out += "    " + quote(from) + " -> " + quote(n->id) + " [style=dashed, label=" + quote(repeat) + "];\n";
    };
    if (n->mode == RepetitionMarker::Mode::sporadic) {
      for (const auto& b : n->body) out += "    " + quote(n->id) + " -> " + quote(b) + ";\n";
      for (const auto& b : n->body) back(b);
    } else {
      std::string prev = n->id;
      for (const auto& b : n->body) {
        out += "    " + quote(prev) + " -> " + quote(b) + ";\n";
        prev = b;
      }
      back(prev);
    }
    out += "  }\n";
  }
  for (const auto& e : w.edges) {
    out += "  " + quote(e.from) + " -> " + quote(e.to);
    if (!e.label.empty()) out += " [label=" + quote(e.label) + "]";
    out += ";\n";
  }
  return out + "}\n";
}

}  // namespace proctime
