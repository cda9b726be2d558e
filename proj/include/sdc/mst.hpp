#pragma once

// Exact minimal spanning tree over the complete metric graph.
//
// build_mst_prim is the production path: O(n^2) distance evaluations, O(n)
// memory, distances computed on the fly (never a full n x n matrix).
// build_mst_kruskal materializes and sorts every pairwise edge, so it is
// O(n^2) memory; it exists as an independently coded cross-check for tests
// and selfcheck, not for large inputs.
//
// Tie rule, shared by both builders: between edges of equal length the one
// with the lexicographically smaller (min index, max index) endpoint pair
// wins. Returned edges are canonical (u < v), sorted by endpoints, and
// total_weight sums them in that order, so equal trees serialize and sum
// identically.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "sdc/dataset.hpp"

namespace sdc {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;  // canonical form keeps u < v
  double length = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct SpanningTree {
  std::size_t n_nodes = 0;
  std::vector<Edge> edges;  // exactly n_nodes - 1, sorted by (u, v)
  double total_weight = 0.0;
};

inline double total_weight(const SpanningTree& t) {
  double acc = 0.0;
  for (const Edge& e : t.edges) acc += e.length;
  return acc;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> edge_key(std::size_t a, std::size_t b) {
  return {std::min(a, b), std::max(a, b)};
}

inline void finalize_tree(SpanningTree& t) {
  for (Edge& e : t.edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(t.edges.begin(), t.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  t.total_weight = total_weight(t);
}

}  // namespace detail

inline SpanningTree build_mst_prim(const Dataset& ds, Metric m) {
  validate_metric(ds, m);
  const std::size_t n = ds.size();

  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, 0.0);
  std::vector<std::size_t> from(n, 0);

  SpanningTree tree;
  tree.n_nodes = n;
  tree.edges.reserve(n - 1);

  in_tree[0] = 1;
  for (std::size_t v = 1; v < n; ++v) {
    best[v] = ds.distance(0, v, m);
    from[v] = 0;
  }

  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 1; v < n; ++v) {
      if (in_tree[v]) continue;
      if (pick == n || best[v] < best[pick] ||
          (best[v] == best[pick] &&
           detail::edge_key(from[v], v) < detail::edge_key(from[pick], pick)))
        pick = v;
    }
    tree.edges.push_back({std::min(from[pick], pick), std::max(from[pick], pick), best[pick]});
    in_tree[pick] = 1;
    for (std::size_t v = 1; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = ds.distance(pick, v, m);
      if (d < best[v] ||
          (d == best[v] && detail::edge_key(pick, v) < detail::edge_key(from[v], v))) {
        best[v] = d;
        from[v] = pick;
      }
    }
  }

  detail::finalize_tree(tree);
  return tree;
}

inline SpanningTree build_mst_kruskal(const Dataset& ds, Metric m) {
  validate_metric(ds, m);
  const std::size_t n = ds.size();

  struct Candidate {
    std::size_t u, v;
    double length;
  };
  std::vector<Candidate> all;
  all.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) all.push_back({u, v, ds.distance(u, v, m)});
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.length, a.u, a.v) < std::tie(b.length, b.u, b.v);
  });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<std::size_t> rank(n, 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  SpanningTree tree;
  tree.n_nodes = n;
  tree.edges.reserve(n - 1);
  for (const Candidate& c : all) {
    const std::size_t ru = find(c.u);
    const std::size_t rv = find(c.v);
    if (ru == rv) continue;
    if (rank[ru] < rank[rv])
      parent[ru] = rv;
    else if (rank[rv] < rank[ru])
      parent[rv] = ru;
    else {
      parent[rv] = ru;
      ++rank[ru];
    }
    tree.edges.push_back({c.u, c.v, c.length});
    if (tree.edges.size() == n - 1) break;
  }

  detail::finalize_tree(tree);
  return tree;
}

}  // namespace sdc
