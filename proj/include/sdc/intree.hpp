#pragma once

// Orientation of the spanning tree into an in-tree (every node points at its
// parent, the root points at itself) and the forest that cutting produces.
// An InTree is immutable once built and shareable across threads; a Forest
// is mutable state and must stay on one thread.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdc/mst.hpp"

namespace sdc {

struct InTree {
  std::vector<std::size_t> parent;   // parent[root] == root
  std::vector<double> parent_len;    // parent_len[root] == 0
  std::size_t root = 0;

  std::size_t size() const { return parent.size(); }
};

// Breadth-first sweep from the chosen root; neighbors are taken in ascending
// index order, so parent assignment is deterministic.
inline InTree orient(const SpanningTree& t, std::size_t root) {
  const std::size_t n = t.n_nodes;
  if (root >= n)
    throw std::invalid_argument("root index " + std::to_string(root) + " out of range");
  if (t.edges.size() + 1 != n)
    throw std::invalid_argument("spanning tree must have exactly n-1 edges");

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const Edge& e : t.edges) {
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  InTree it;
  it.parent.assign(n, n);  // n marks "not reached yet"
  it.parent_len.assign(n, 0.0);
  it.root = root;
  it.parent[root] = root;

  std::vector<std::size_t> queue;
  queue.reserve(n);
  queue.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (const auto& [v, len] : adj[u]) {
      if (it.parent[v] != n) continue;
      it.parent[v] = u;
      it.parent_len[v] = len;
      queue.push_back(v);
    }
  }
  if (queue.size() != n)
    throw std::invalid_argument("edges do not span all nodes");
  return it;
}

class Forest {
 public:
  explicit Forest(const InTree& it)
      : parent_(it.parent),
        parent_len_(it.parent_len),
        cache_(it.parent.size(), 0),
        cache_stamp_(it.parent.size(), 0) {}

  std::size_t size() const { return parent_.size(); }
  std::size_t parent(std::size_t i) const { return parent_[checked(i)]; }
  double parent_len(std::size_t i) const { return parent_len_[checked(i)]; }
  bool is_root(std::size_t i) const { return parent_[checked(i)] == i; }
  std::size_t n_cuts() const { return n_cuts_; }

  // Promotes child to a root of its own sub-tree. Every other link is
  // untouched, so root count == cut count + 1 at all times.
  void cut(std::size_t child) {
    checked(child);
    if (parent_[child] == child) throw std::logic_error("cut at an existing root");
    parent_[child] = child;
    parent_len_[child] = 0.0;
    ++n_cuts_;
    ++stamp_;  // drop memoized roots
  }

  // Root reached by following parent links. Memoizes every chain it walks;
  // the memo is cleared on cut, so answers always equal the plain walk.
  std::size_t find_root(std::size_t i) const {
    std::size_t cur = checked(i);
    scratch_.clear();
    while (parent_[cur] != cur) {
      if (cache_stamp_[cur] == stamp_) {
        cur = cache_[cur];
        break;
      }
      scratch_.push_back(cur);
      cur = parent_[cur];
    }
    for (std::size_t v : scratch_) {
      cache_[v] = cur;
      cache_stamp_[v] = stamp_;
    }
    return cur;
  }

  std::vector<std::size_t> roots() const {
    std::vector<std::size_t> out;
    out.reserve(n_cuts_ + 1);
    for (std::size_t i = 0; i < parent_.size(); ++i)
      if (parent_[i] == i) out.push_back(i);
    return out;
  }

 private:
  std::size_t checked(std::size_t i) const {
    if (i >= parent_.size())
      throw std::out_of_range("node index " + std::to_string(i) + " out of range");
    return i;
  }

  std::vector<std::size_t> parent_;
  std::vector<double> parent_len_;
  std::size_t n_cuts_ = 0;

  // find_root memo; entries are valid only when their stamp matches
  mutable std::vector<std::size_t> cache_;
  mutable std::vector<std::uint64_t> cache_stamp_;
  mutable std::uint64_t stamp_ = 1;
  mutable std::vector<std::size_t> scratch_;
};

}  // namespace sdc
