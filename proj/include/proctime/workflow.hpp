// Workflow view of encoded recipes: actions ordered by the precedence their
// closed networks force, parallel groups between and-split/and-join bars,
// scenarios under an exclusive choice, repetitions as loops.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "proctime/recipe.hpp"

namespace proctime {

struct WorkflowNode {
  enum class Kind { source, sink, action, and_split, and_join, xor_split, xor_join, loop, no_op };
  std::string id;
  Kind kind = Kind::action;
  std::string label;
  std::string parent;  // enclosing loop, for body nodes

  // Loops only.
  RepetitionMarker::Mode mode = RepetitionMarker::Mode::count;
  std::vector<std::string> body;
  std::string guard;
  bool operator==(const WorkflowNode&) const = default;
};

struct WorkflowEdge {
  std::string from;
  std::string to;
  std::string label;
  bool operator==(const WorkflowEdge&) const = default;
};

struct WorkflowGraph {
  std::vector<WorkflowNode> nodes;
  std::vector<WorkflowEdge> edges;  // between top-level nodes

  const WorkflowNode* node(const std::string& id) const;
  std::vector<std::string> successors(const std::string& id) const;
  std::vector<std::string> predecessors(const std::string& id) const;
};

std::string_view name_of(WorkflowNode::Kind k);

/// a precedes b when the closed cell a -> b lies within {b, m}. Returns the
/// transitive reduction over the action intervals of `h`, as sorted pairs.
/// Throws ModelError on an inconsistent network or a cyclic precedence.
std::vector<std::pair<std::string, std::string>> precedence_edges(const HybridNetwork& h);

/// States and timers are left out. Sporadic targets become loops over the
/// action or a no-op, alternations loops over both partners, counts loops
/// over the action guarded by its state or count. Several scenarios are
/// joined under one xor-split/xor-join with node ids prefixed `<label>.`.
WorkflowGraph to_workflow(const std::vector<Scenario>& scenarios, const std::vector<RepetitionMarker>& markers);

/// Graphviz text: nodes sorted by id, one edge per line, gateways as black
/// bars (and) or diamonds (xor), loops as clusters with dashed back-edges.
std::string emit_dot(const WorkflowGraph& w);

}  // namespace proctime
