#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "sdc/mst.hpp"
#include "sdc/oracle.hpp"

using namespace sdc;

namespace {

// connectivity check independent of the builders
bool spans_all_nodes(const SpanningTree& t) {
  std::vector<std::size_t> parent(t.n_nodes);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : t.edges) parent[find(e.u)] = find(e.v);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < t.n_nodes; ++i)
    if (find(i) != root) return false;
  return true;
}

}  // namespace

TEST_CASE("two points give the single connecting edge", "[mst]") {
  const Dataset ds = Dataset::numeric(2, {0, 0, 3, 4});
  for (const SpanningTree& t :
       {build_mst_prim(ds, Metric::euclidean), build_mst_kruskal(ds, Metric::euclidean)}) {
    REQUIRE(t.edges.size() == 1);
    CHECK(t.edges[0] == Edge{0, 1, 5.0});
    CHECK(t.total_weight == 5.0);
  }
}

TEST_CASE("three collinear points have the unique chain tree", "[mst]") {
  const Dataset ds = Dataset::numeric(1, {0, 1, 3});
  for (const SpanningTree& t :
       {build_mst_prim(ds, Metric::euclidean), build_mst_kruskal(ds, Metric::euclidean)}) {
    REQUIRE(t.edges.size() == 2);
    CHECK(t.edges[0] == Edge{0, 1, 1.0});
    CHECK(t.edges[1] == Edge{1, 2, 2.0});
    CHECK(t.total_weight == 3.0);
    CHECK(total_weight(t) == t.total_weight);
  }
}

TEST_CASE("all-equal distances make any spanning tree minimal", "[mst]") {
  // four one-column records, pairwise mismatch 1
  const Dataset ds = Dataset::categorical(1, {"a", "b", "c", "d"});
  const SpanningTree p = build_mst_prim(ds, Metric::mismatch);
  const SpanningTree k = build_mst_kruskal(ds, Metric::mismatch);
  CHECK(p.total_weight == 3.0);  // (n-1) * d
  CHECK(k.total_weight == 3.0);
  // deterministic tie-break: smallest endpoint pairs win
  CHECK(p.edges == std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  CHECK(p.edges == k.edges);
}

TEST_CASE("six random points match the exhaustive enumeration", "[mst]") {
  std::mt19937_64 g(23);
  for (int instance = 0; instance < 20; ++instance) {
    const Dataset ds = oracle::random_points_2d(g, 6);
    const SpanningTree prim = build_mst_prim(ds, Metric::euclidean);
    const auto enumerated =
        oracle::enumerate_minimum_spanning_tree(oracle::distance_matrix(ds, Metric::euclidean));
    CHECK(enumerated.n_trees == 1296);  // 6^4 labeled trees
    CHECK(prim.total_weight == enumerated.min_weight);
  }
}

TEST_CASE("prim and kruskal agree on fifty points", "[mst]") {
  std::mt19937_64 g(29);
  for (int instance = 0; instance < 10; ++instance) {
    const Dataset ds = oracle::random_points_2d(g, 50);
    const double wp = build_mst_prim(ds, Metric::euclidean).total_weight;
    const double wk = build_mst_kruskal(ds, Metric::euclidean).total_weight;
    CHECK(std::abs(wp - wk) <= 1e-9 * std::max(1.0, std::abs(wp)));
  }
}

TEST_CASE("edge count and connectivity", "[mst]") {
  std::mt19937_64 g(31);
  for (const std::size_t n : {2, 5, 17, 64}) {
    const Dataset ds = oracle::random_points_2d(g, n);
    const SpanningTree t = build_mst_prim(ds, Metric::euclidean);
    CHECK(t.edges.size() == n - 1);
    CHECK(spans_all_nodes(t));
    for (const Edge& e : t.edges) CHECK(e.u < e.v);
  }
}

TEST_CASE("builders are deterministic", "[mst]") {
  std::mt19937_64 g(37);
  const Dataset ds = oracle::random_points_2d(g, 40);
  CHECK(build_mst_prim(ds, Metric::euclidean).edges ==
        build_mst_prim(ds, Metric::euclidean).edges);
  CHECK(build_mst_kruskal(ds, Metric::euclidean).edges ==
        build_mst_kruskal(ds, Metric::euclidean).edges);
}

TEST_CASE("mismatch metric trees work end to end", "[mst]") {
  std::mt19937_64 g(41);
  std::vector<std::string> tokens(30 * 6);
  for (auto& t : tokens) t = std::string(1, static_cast<char>('a' + rng::bounded(g, 3)));
  const Dataset ds = Dataset::categorical(6, tokens);
  const SpanningTree p = build_mst_prim(ds, Metric::mismatch);
  const SpanningTree k = build_mst_kruskal(ds, Metric::mismatch);
  CHECK(p.total_weight == k.total_weight);  // tie-break rule is shared, sums are canonical
  CHECK(spans_all_nodes(p));
}
