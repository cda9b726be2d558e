#pragma once

// Label-driven divisive cutting. One global pass over the in-tree edges in
// decreasing length; an edge is cut iff its current component holds labels of
// more than one category and both sides of the edge keep at least one labeled
// node. The pass stops as soon as every component is pure.
//
// A skipped edge never needs revisiting: cutting only refines components, so
// a component that is pure (or an edge side that is unlabeled) stays that way.
//
// Cost per explored edge is one traversal of the child-side subtree; edges in
// already-pure components are skipped in O(1) via per-component label counts.

#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdc/dataset.hpp"
#include "sdc/intree.hpp"

namespace sdc {

struct CutRecord {
  std::size_t rank = 0;  // 1-based position in the descending-length order
  std::size_t child = 0;
  std::size_t parent = 0;
  double length = 0.0;
  bool accepted = false;
  std::string reason;
};

struct CutLog {
  std::vector<CutRecord> records;
  double elapsed_ms = 0.0;  // wall time of the whole cut phase

  std::size_t accepted_count() const {
    std::size_t c = 0;
    for (const CutRecord& r : records)
      if (r.accepted) ++c;
    return c;
  }
};

struct CutOutcome {
  Forest forest;
  CutLog log;
};

// Category multisets on the two sides of one uncut edge, restricted to the
// component that currently contains it.
struct ComponentLabelView {
  std::map<std::string, std::size_t> child_side;
  std::map<std::string, std::size_t> parent_side;
};

namespace detail {

struct CompCounts {
  std::vector<std::uint32_t> per_category;
  std::uint32_t total = 0;
  std::uint32_t distinct = 0;

  bool impure() const { return distinct >= 2; }

  void recount() {
    total = 0;
    distinct = 0;
    for (std::uint32_t c : per_category) {
      total += c;
      if (c > 0) ++distinct;
    }
  }
};

}  // namespace detail

inline CutOutcome divisive_cut(const InTree& it, const SpanningTree& t, const LabelSet& ls) {
  const std::size_t n = it.size();
  if (t.n_nodes != n) throw std::invalid_argument("in-tree and spanning tree sizes differ");
  if (ls.empty()) throw std::invalid_argument("label set is empty");

  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<std::int32_t> label = ls.dense_codes(n);
  const std::size_t k = ls.n_categories();

  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i)
    if (i != it.root) children[it.parent[i]].push_back(i);

  // Non-root nodes stand for their parent edges. Descending length; equal
  // lengths fall back to the smaller canonical endpoint pair, the same rule
  // the MST builders use.
  std::vector<std::size_t> order;
  order.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (i != it.root) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (it.parent_len[a] != it.parent_len[b]) return it.parent_len[a] > it.parent_len[b];
    return detail::edge_key(a, it.parent[a]) < detail::edge_key(b, it.parent[b]);
  });

  Forest forest(it);
  std::vector<std::size_t> comp_root(n, it.root);
  std::unordered_map<std::size_t, detail::CompCounts> comps;
  {
    detail::CompCounts whole;
    whole.per_category.assign(k, 0);
    for (const auto& e : ls.entries()) ++whole.per_category[e.second];
    whole.recount();
    comps.emplace(it.root, std::move(whole));
  }
  std::size_t impure_components = comps.at(it.root).impure() ? 1 : 0;

  CutLog log;
  std::vector<std::size_t> stack;
  std::vector<std::size_t> visited;
  std::vector<std::uint32_t> side(k, 0);

  std::size_t rank = 0;
  for (std::size_t child : order) {
    if (impure_components == 0) break;  // every component pure: exploration stops
    ++rank;
    const std::size_t par = it.parent[child];
    const double len = it.parent_len[child];
    const std::size_t root = comp_root[child];

    std::uint32_t comp_total;
    {
      const detail::CompCounts& comp = comps.at(root);
      if (!comp.impure()) {
        log.records.push_back({rank, child, par, len, false, "component-pure"});
        continue;
      }
      comp_total = comp.total;
    }

    // labels on the child side, by subtree traversal within the component
    std::fill(side.begin(), side.end(), 0);
    std::uint32_t side_total = 0;
    visited.clear();
    stack.assign(1, child);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      visited.push_back(v);
      if (label[v] >= 0) {
        ++side[static_cast<std::size_t>(label[v])];
        ++side_total;
      }
      for (std::size_t w : children[v]) stack.push_back(w);
    }

    if (side_total == 0) {
      log.records.push_back({rank, child, par, len, false, "child-side-unlabeled"});
      continue;
    }
    if (side_total == comp_total) {
      log.records.push_back({rank, child, par, len, false, "parent-side-unlabeled"});
      continue;
    }

    // impure component, labels on both sides: cut
    forest.cut(child);
    auto& siblings = children[par];
    siblings.erase(std::find(siblings.begin(), siblings.end(), child));
    for (std::size_t v : visited) comp_root[v] = child;

    detail::CompCounts child_comp;
    child_comp.per_category = side;
    child_comp.recount();

    detail::CompCounts parent_comp = comps.at(root);
    for (std::size_t c = 0; c < k; ++c) parent_comp.per_category[c] -= side[c];
    parent_comp.recount();

    impure_components += (child_comp.impure() ? 1 : 0) + (parent_comp.impure() ? 1 : 0) - 1;
    comps.at(root) = std::move(parent_comp);
    comps.emplace(child, std::move(child_comp));

    log.records.push_back({rank, child, par, len, true, "impure-both-sides-labeled"});
  }

  // exit invariant: every component labeled and pure
  for (const auto& [root, comp] : comps) {
    (void)root;
    if (comp.total == 0 || comp.impure())
      throw std::logic_error("cut phase ended with an unlabeled or impure component");
  }

  log.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(forest), std::move(log)};
}

inline ComponentLabelView side_labels(const Forest& f, const SpanningTree& t, const Edge& e,
                                      const LabelSet& ls) {
  const std::size_t n = f.size();
  if (t.n_nodes != n) throw std::invalid_argument("forest and spanning tree sizes differ");
  if (e.u >= n || e.v >= n) throw std::out_of_range("edge endpoint out of range");

  std::size_t child;
  if (e.u != e.v && f.parent(e.u) == e.v)
    child = e.u;
  else if (e.u != e.v && f.parent(e.v) == e.u)
    child = e.v;
  else
    throw std::logic_error("edge is not an uncut edge of the forest");

  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!f.is_root(i)) children[f.parent(i)].push_back(i);

  std::vector<char> in_child(n, 0);
  std::vector<std::size_t> stack{child};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    in_child[v] = 1;
    for (std::size_t w : children[v]) stack.push_back(w);
  }

  ComponentLabelView view;
  const std::size_t comp_root = f.find_root(child);
  for (const auto& entry : ls.entries()) {
    if (f.find_root(entry.first) != comp_root) continue;
    const std::string& name = ls.categories()[entry.second];
    if (in_child[entry.first])
      ++view.child_side[name];
    else
      ++view.parent_side[name];
  }
  return view;
}

}  // namespace sdc
