// Binary constraint networks over a relation algebra, and their
// path-consistency closure.
#pragma once

#include <algorithm>
#include <concepts>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "proctime/errors.hpp"

namespace proctime {

template <class R>
concept RelationAlgebra = requires(R a, R b) {
  { R::full() } -> std::same_as<R>;
  { R::identity() } -> std::same_as<R>;
  { converse(a) } -> std::same_as<R>;
  { compose(a, b) } -> std::same_as<R>;
  { a & b } -> std::same_as<R>;
  { a.is_empty() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
};

/// Named variables with a dense matrix of relations. The diagonal holds the
/// identity and cell (j, i) is always the converse of cell (i, j).
template <RelationAlgebra R>
class ConstraintNetwork {
 public:
  using relation_type = R;

  ConstraintNetwork() = default;
  explicit ConstraintNetwork(std::vector<std::string> ids) {
    for (auto& id : ids) add_variable(std::move(id));
  }

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }

  std::optional<std::size_t> find(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }
  std::size_t index(const std::string& id) const {
    if (auto i = find(id)) return *i;
    throw ModelError("unknown interval '" + id + "'");
  }

  /// Appends a variable unconstrained against all others; returns its index.
  std::size_t add_variable(std::string id) {
    if (find(id)) throw ModelError("duplicate interval '" + id + "'");
    const std::size_t n = ids_.size();
    std::vector<R> grown((n + 1) * (n + 1), R::full());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = cells_[i * n + j];
    grown[n * (n + 1) + n] = R::identity();
    cells_ = std::move(grown);
    ids_.push_back(std::move(id));
    return n;
  }

  const R& at(std::size_t i, std::size_t j) const { return cells_[i * size() + j]; }
  const R& at(const std::string& a, const std::string& b) const { return at(index(a), index(b)); }

  /// Overwrites cell (i, j) and its converse.
  void set(std::size_t i, std::size_t j, R r) {
    cells_[i * size() + j] = r;
    cells_[j * size() + i] = converse(r);
  }

  /// Intersects cell (i, j) with `r`; returns the new cell.
  R constrain(std::size_t i, std::size_t j, R r) {
    const R narrowed = at(i, j) & r;
    set(i, j, narrowed);
    return narrowed;
  }
  R constrain(const std::string& a, const std::string& b, R r) { return constrain(index(a), index(b), r); }

  bool has_empty_cell() const {
    return std::any_of(cells_.begin(), cells_.end(), [](const R& r) { return r.is_empty(); });
  }

  /// Subnetwork without the listed variables.
  ConstraintNetwork without(const std::vector<std::size_t>& dropped) const {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < size(); ++i)
      if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) kept.push_back(i);
    ConstraintNetwork out;
    for (auto i : kept) out.add_variable(ids_[i]);
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = a + 1; b < kept.size(); ++b) out.set(a, b, at(kept[a], kept[b]));
    return out;
  }

  bool operator==(const ConstraintNetwork&) const = default;

 private:
  std::vector<std::string> ids_;
  std::vector<R> cells_;
};

template <RelationAlgebra R>
struct ClosureResult {
  ConstraintNetwork<R> network;
  bool consistent = true;
};

/// Largest path-consistent subnetwork: every cell (i, j) is narrowed by
/// compose(C[i][k], C[k][j]) until nothing changes. An emptied cell stops the
/// propagation and is reported through `consistent`.
template <RelationAlgebra R>
ClosureResult<R> close(ConstraintNetwork<R> n) {
  const std::size_t size = n.size();
  if (n.has_empty_cell()) return {std::move(n), false};

  std::deque<std::pair<std::size_t, std::size_t>> queue;
  std::vector<char> queued(size * size, 0);
  auto push = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (!queued[i * size + j]) {
      queued[i * size + j] = 1;
      queue.emplace_back(i, j);
    }
  };
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) push(i, j);

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    queued[i * size + j] = 0;
    for (std::size_t k = 0; k < size; ++k) {
      if (k == i || k == j) continue;
      // C[i][k] through j.
      const R ik = n.at(i, k) & compose(n.at(i, j), n.at(j, k));
      if (!(ik == n.at(i, k))) {
        n.set(i, k, ik);
        if (ik.is_empty()) return {std::move(n), false};
        push(i, k);
      }
      // C[k][j] through i.
      const R kj = n.at(k, j) & compose(n.at(k, i), n.at(i, j));
      if (!(kj == n.at(k, j))) {
        n.set(k, j, kj);
        if (kj.is_empty()) return {std::move(n), false};
        push(k, j);
      }
    }
  }
  return {std::move(n), true};
}

}  // namespace proctime
