#pragma once

// Independent verification oracles, used by the selfcheck command and the
// acceptance tests. Nothing here reuses the production code path it checks:
// the exhaustive search enumerates every labeled tree by Prufer sequence, and
// the rule replay re-derives each cut decision from scratch with a union-find
// over the surviving edges.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdc/dataset.hpp"
#include "sdc/divisive_cut.hpp"
#include "sdc/intree.hpp"
#include "sdc/mst.hpp"
#include "sdc/rng.hpp"

namespace sdc::oracle {

namespace detail {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Standard Prufer decode: code of length n-2 over [0, n) to the unique
// labeled tree with that sequence.
inline std::vector<std::pair<std::size_t, std::size_t>> prufer_decode(
    const std::vector<std::size_t>& code, std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t c : code) ++degree[c];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(n - 1);
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (std::size_t c : code) {
    edges.emplace_back(leaf, c);
    degree[leaf] = 0;  // consumed
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  std::size_t a = n, b = n;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) {
      if (a == n)
        a = v;
      else
        b = v;
    }
  edges.emplace_back(a, b);
  return edges;
}

}  // namespace detail

inline std::vector<std::vector<double>> distance_matrix(const Dataset& ds, Metric m) {
  const std::size_t n = ds.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = ds.distance(i, j, m);
  return w;
}

struct EnumeratedMst {
  double min_weight = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t n_trees = 0;  // n^(n-2) candidates examined
};

// Minimum over every one of the n^(n-2) labeled spanning trees. Each
// candidate's weight is summed over its edges sorted by endpoints, the same
// order SpanningTree uses, so equal trees produce bitwise-equal sums.
inline EnumeratedMst enumerate_minimum_spanning_tree(const std::vector<std::vector<double>>& w) {
  const std::size_t n = w.size();
  if (n < 2 || n > 8)
    throw std::invalid_argument("exhaustive enumeration supports 2 <= n <= 8");

  EnumeratedMst best;
  best.min_weight = std::numeric_limits<double>::infinity();

  if (n == 2) {
    best.min_weight = w[0][1];
    best.edges = {{0, 1}};
    best.n_trees = 1;
    return best;
  }

  std::vector<std::size_t> code(n - 2, 0);
  while (true) {
    auto edges = detail::prufer_decode(code, n);
    for (auto& e : edges)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    double weight = 0.0;
    for (const auto& e : edges) weight += w[e.first][e.second];
    if (weight < best.min_weight) {
      best.min_weight = weight;
      best.edges = edges;
    }
    ++best.n_trees;

    std::size_t pos = 0;
    while (pos < code.size() && code[pos] + 1 == n) {
      code[pos] = 0;
      ++pos;
    }
    if (pos == code.size()) break;
    ++code[pos];
  }
  return best;
}

// Renames component ids so each component is represented by its smallest
// member; partitions compare with plain vector equality afterwards.
inline std::vector<std::size_t> canonical_partition(const std::vector<std::size_t>& comp_of) {
  std::unordered_map<std::size_t, std::size_t> representative;
  for (std::size_t i = 0; i < comp_of.size(); ++i)
    representative.try_emplace(comp_of[i], i);  // first occurrence is the minimum
  std::vector<std::size_t> out(comp_of.size());
  for (std::size_t i = 0; i < comp_of.size(); ++i) out[i] = representative.at(comp_of[i]);
  return out;
}

inline std::vector<std::size_t> forest_partition(const Forest& f) {
  std::vector<std::size_t> comp(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) comp[i] = f.find_root(i);
  return canonical_partition(comp);
}

// Literal replay of the two divisive rules over an explicit tree: walk edges
// in decreasing length and cut one iff the component holding it spans more
// than one labeled category and both of its sides keep a labeled node, where
// components are recomputed from the surviving edge set each time.
inline std::vector<std::size_t> rule_replay_partition(std::size_t n, std::vector<Edge> edges,
                                                      const LabelSet& ls) {
  if (edges.size() + 1 != n) throw std::invalid_argument("not a spanning tree");
  const std::vector<std::int32_t> label = ls.dense_codes(n);

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.length != b.length) return a.length > b.length;
    return sdc::detail::edge_key(a.u, a.v) < sdc::detail::edge_key(b.u, b.v);
  });
  std::vector<char> cut(edges.size(), 0);

  const std::size_t no_skip = edges.size();
  auto components = [&](std::size_t skip) {
    detail::Dsu d(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (!cut[i] && i != skip) d.unite(edges[i].u, edges[i].v);
    return d;
  };
  auto has_impure_component = [&](detail::Dsu& d) {
    std::unordered_map<std::size_t, std::int32_t> first_cat;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] < 0) continue;
      const std::size_t c = d.find(i);
      auto [it, inserted] = first_cat.try_emplace(c, label[i]);
      if (!inserted && it->second != label[i]) return true;
    }
    return false;
  };

  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    {
      detail::Dsu d = components(no_skip);
      if (!has_impure_component(d)) break;
    }
    const Edge& e = edges[ei];

    detail::Dsu with_edge = components(no_skip);
    const std::size_t comp = with_edge.find(e.u);
    std::int32_t seen = -1;
    bool impure = false;
    for (std::size_t i = 0; i < n && !impure; ++i) {
      if (label[i] < 0 || with_edge.find(i) != comp) continue;
      if (seen == -1)
        seen = label[i];
      else if (seen != label[i])
        impure = true;
    }
    if (!impure) continue;

    detail::Dsu without = components(ei);
    bool labeled_u = false, labeled_v = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] < 0) continue;
      const std::size_t c = without.find(i);
      if (c == without.find(e.u)) labeled_u = true;
      if (c == without.find(e.v)) labeled_v = true;
    }
    if (labeled_u && labeled_v) cut[ei] = 1;
  }

  detail::Dsu final_dsu = components(no_skip);
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = final_dsu.find(i);
  return canonical_partition(comp);
}

// --- random instances for checks ---------------------------------------------

inline Dataset random_points_2d(std::mt19937_64& g, std::size_t n) {
  std::vector<double> values(n * 2);
  for (double& v : values) v = rng::unit_real(g);
  return Dataset::numeric(2, std::move(values));
}

// Random recursive tree with uniform edge lengths in (0, 1].
inline SpanningTree random_tree(std::mt19937_64& g, std::size_t n) {
  SpanningTree t;
  t.n_nodes = n;
  t.edges.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t p = static_cast<std::size_t>(rng::bounded(g, i));
    t.edges.push_back({p, i, rng::unit_real(g) + 1e-6});
  }
  sdc::detail::finalize_tree(t);
  return t;
}

// Distinct indices split across n_cats categories, counts_per_cat[i] each.
inline LabelSet random_labels(std::mt19937_64& g, std::size_t n,
                              const std::vector<std::size_t>& counts_per_cat) {
  std::size_t total = 0;
  for (std::size_t c : counts_per_cat) total += c;
  if (total > n) throw std::invalid_argument("more labels than points");
  const std::vector<std::size_t> picks = rng::sample_indices(n, total, g);
  std::vector<std::pair<std::size_t, std::string>> pairs;
  pairs.reserve(total);
  std::size_t at = 0;
  for (std::size_t c = 0; c < counts_per_cat.size(); ++c)
    for (std::size_t i = 0; i < counts_per_cat[c]; ++i)
      pairs.emplace_back(picks[at++], "c" + std::to_string(c));
  return LabelSet::from_pairs(std::move(pairs));
}

// --- selfcheck ---------------------------------------------------------------

struct SelfcheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::vector<SelfcheckResult> run_selfcheck(std::uint64_t seed) {
  std::vector<SelfcheckResult> out;

  {  // Prim against exhaustive enumeration
    std::mt19937_64 g(rng::derive_seed(seed, 1, 0));
    std::size_t failures = 0;
    const std::size_t instances = 60;
    for (std::size_t i = 0; i < instances; ++i) {
      const std::size_t n = 4 + i % 3;
      const Dataset ds = random_points_2d(g, n);
      const SpanningTree prim = build_mst_prim(ds, Metric::euclidean);
      const EnumeratedMst enumerated =
          enumerate_minimum_spanning_tree(distance_matrix(ds, Metric::euclidean));
      if (prim.total_weight != enumerated.min_weight) ++failures;
    }
    out.push_back({"mst-minimality", failures == 0,
                   std::to_string(instances - failures) + "/" + std::to_string(instances) +
                       " instances match the exhaustive minimum"});
  }

  {  // Prim against Kruskal
    std::mt19937_64 g(rng::derive_seed(seed, 2, 0));
    std::size_t failures = 0;
    const std::size_t instances = 20;
    for (std::size_t i = 0; i < instances; ++i) {
      const Dataset ds = random_points_2d(g, 40);
      const double wp = build_mst_prim(ds, Metric::euclidean).total_weight;
      const double wk = build_mst_kruskal(ds, Metric::euclidean).total_weight;
      if (std::abs(wp - wk) > 1e-9 * std::max(1.0, std::abs(wp))) ++failures;
    }
    out.push_back({"prim-kruskal-agreement", failures == 0,
                   std::to_string(instances - failures) + "/" + std::to_string(instances) +
                       " instances agree"});
  }

  {  // divisive cutting against the literal rule replay
    std::mt19937_64 g(rng::derive_seed(seed, 3, 0));
    std::size_t failures = 0;
    const std::size_t instances = 60;
    for (std::size_t i = 0; i < instances; ++i) {
      const std::size_t cats = 2 + rng::bounded(g, 3);
      std::vector<std::size_t> counts(cats);
      std::size_t total = 0;
      for (auto& c : counts) {
        c = 1 + rng::bounded(g, 3);
        total += c;
      }
      const std::size_t n = std::max<std::size_t>(total, 4 + rng::bounded(g, 9));
      const Dataset ds = random_points_2d(g, n);
      const LabelSet ls = random_labels(g, n, counts);
      const SpanningTree tree = build_mst_prim(ds, Metric::euclidean);
      const InTree it = orient(tree, 0);
      const CutOutcome cut = divisive_cut(it, tree, ls);
      if (forest_partition(cut.forest) != rule_replay_partition(n, tree.edges, ls)) ++failures;
    }
    out.push_back({"rule-replay-equivalence", failures == 0,
                   std::to_string(instances - failures) + "/" + std::to_string(instances) +
                       " partitions identical"});
  }

  {  // termination and purity on random trees
    std::mt19937_64 g(rng::derive_seed(seed, 4, 0));
    std::size_t failures = 0;
    const std::size_t instances = 100;
    for (std::size_t i = 0; i < instances; ++i) {
      const std::size_t n = 6 + rng::bounded(g, 55);
      const std::size_t cats = 2 + rng::bounded(g, 3);
      std::vector<std::size_t> counts(cats, 1);
      const SpanningTree t = random_tree(g, n);
      const LabelSet ls = random_labels(g, n, counts);
      const InTree it = orient(t, 0);
      const CutOutcome cut = divisive_cut(it, t, ls);
      const std::vector<std::int32_t> label = ls.dense_codes(n);
      std::unordered_map<std::size_t, std::int32_t> comp_cat;
      bool ok = cut.forest.roots().size() == cut.forest.n_cuts() + 1;
      for (std::size_t v = 0; v < n && ok; ++v) {
        if (label[v] < 0) continue;
        const std::size_t r = cut.forest.find_root(v);
        auto [itc, inserted] = comp_cat.try_emplace(r, label[v]);
        if (!inserted && itc->second != label[v]) ok = false;  // impure survived
      }
      for (std::size_t r : cut.forest.roots())
        if (!comp_cat.count(r)) ok = false;  // unlabeled component survived
      if (!ok) ++failures;
    }
    out.push_back({"termination-and-purity", failures == 0,
                   std::to_string(instances - failures) + "/" + std::to_string(instances) +
                       " forests pure and labeled"});
  }

  return out;
}

}  // namespace sdc::oracle
