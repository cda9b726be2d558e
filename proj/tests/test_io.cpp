#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "sdc/io.hpp"
#include "sdc/oracle.hpp"

using namespace sdc;
using testutil::TempDir;

TEST_CASE("numeric loader reads a small table", "[io]") {
  TempDir tmp;
  const std::string path = tmp.path("points.csv");
  testutil::write_file(path, "0,0\n3,4\n1,1\n");
  const LoadedData data = load_numeric({path, ',', std::nullopt});
  CHECK(data.dataset.size() == 3);
  CHECK(data.dataset.dim() == 2);
  CHECK(data.truth.empty());
  CHECK(data.dataset.distance(0, 1, Metric::euclidean) == 5.0);
}

TEST_CASE("numeric loader splits out the truth column", "[io]") {
  TempDir tmp;
  const std::string path = tmp.path("points.csv");
  testutil::write_file(path, "a,0,0\nb,3,4\na,1,1\n");
  const LoadedData data = load_numeric({path, ',', 0});
  CHECK(data.dataset.dim() == 2);
  CHECK(data.truth == std::vector<std::string>{"a", "b", "a"});
}

TEST_CASE("numeric loader reports bad rows precisely", "[io]") {
  TempDir tmp;
  const std::string ragged = tmp.path("ragged.csv");
  testutil::write_file(ragged, "0,0\n1\n2,2\n");
  CHECK_THROWS_WITH(load_numeric({ragged, ',', std::nullopt}),
                    Catch::Matchers::ContainsSubstring(":2:"));

  const std::string text = tmp.path("text.csv");
  testutil::write_file(text, "0,0\n1,zebra\n");
  CHECK_THROWS_WITH(load_numeric({text, ',', std::nullopt}),
                    Catch::Matchers::ContainsSubstring("zebra"));

  const std::string nan_file = tmp.path("nan.csv");
  testutil::write_file(nan_file, "0,0\n1,nan\n");
  CHECK_THROWS_WITH(load_numeric({nan_file, ',', std::nullopt}),
                    Catch::Matchers::ContainsSubstring("non-finite"));

  CHECK_THROWS_AS(load_numeric({tmp.path("absent.csv"), ',', std::nullopt}),
                  std::runtime_error);
}

TEST_CASE("categorical loader keeps symbols verbatim", "[io]") {
  TempDir tmp;
  const std::string path = tmp.path("rows.csv");
  testutil::write_file(path, "e,x,s,?\np,x,y,w\ne,x,s,?\n");
  const LoadedData data = load_categorical({path, ',', 0});
  CHECK(data.dataset.size() == 3);
  CHECK(data.dataset.dim() == 3);
  CHECK(data.truth == std::vector<std::string>{"e", "p", "e"});
  CHECK(data.dataset.token_at(0, 2) == "?");                     // ordinary symbol
  CHECK(data.dataset.distance(0, 2, Metric::mismatch) == 0.0);   // identical rows
  CHECK(data.dataset.distance(0, 1, Metric::mismatch) == 2.0);
}

TEST_CASE("label file loading", "[io]") {
  TempDir tmp;
  const std::string path = tmp.path("labels.csv");
  testutil::write_file(path, "# comment\n0,A\n4, B\n");
  const LabelSet ls = load_labels(path);
  CHECK(ls.size() == 2);
  CHECK(ls.categories() == std::vector<std::string>{"A", "B"});

  const std::string dup = tmp.path("dup.csv");
  testutil::write_file(dup, "0,A\n0,B\n");
  CHECK_THROWS_AS(load_labels(dup), std::invalid_argument);

  const std::string bad = tmp.path("bad.csv");
  testutil::write_file(bad, "zero,A\n");
  CHECK_THROWS_AS(load_labels(bad), std::runtime_error);
}

TEST_CASE("assignment files round-trip", "[io]") {
  const Dataset ds = testutil::chain_dataset();
  const LabelSet ls = LabelSet::from_pairs({{0, "A"}, {4, "B"}});
  const ClusterResult res = run_sdc(ds, ls, Metric::euclidean);

  TempDir tmp;
  const std::string path = tmp.path("assign.csv");
  write_assignment(res, path);

  const AssignmentFile file = read_assignment(path);
  REQUIRE(file.rows.size() == 5);
  CHECK(file.n_clusters == 2);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(file.rows[i].index == i);
    CHECK(file.rows[i].cluster == res.assignment[i]);
    CHECK(file.rows[i].category == res.cluster_category[res.assignment[i]]);
  }
  CHECK(file.rows[0].category == "A");
  CHECK(file.rows[4].category == "B");

  CHECK_THROWS_AS(write_assignment(res, ""), std::invalid_argument);
}

TEST_CASE("cut log serialization lists every explored edge", "[io]") {
  const Dataset ds = Dataset::numeric(1, {0, 1, 2, 3, 4});
  const LabelSet ls = LabelSet::from_pairs({{0, "A"}, {2, "B"}, {4, "A"}});
  const ClusterResult res = run_sdc(ds, ls, Metric::euclidean);

  const std::string text = format_cut_log(res.cut_log);
  CHECK(text.find("rank") != std::string::npos);
  CHECK(text.find("accepted") != std::string::npos);
  std::size_t lines = 0;
  for (char c : text) lines += (c == '\n');
  CHECK(lines == res.cut_log.records.size() + 1);  // header plus one line per record
}

TEST_CASE("sweep report round-trips through its text form", "[io]") {
  std::mt19937_64 g(127);
  std::vector<std::size_t> group_of;
  const Dataset ds = testutil::grouped_points(g, {{0, 0}, {30, 0}}, 15, 2.0, &group_of);
  std::vector<std::string> truth;
  for (std::size_t gi : group_of) truth.push_back("g" + std::to_string(gi));
  const SweepReport report = sweep(ds, truth, {1, 3}, 5, 9, Metric::euclidean);

  TempDir tmp;
  const std::string path = tmp.path("report.tsv");
  write_sweep_report(report, path);

  const SweepReport loaded = read_sweep_report(path);
  CHECK(loaded.trials == report.trials);
  CHECK(loaded.seed == report.seed);
  CHECK(loaded.stratified == report.stratified);
  REQUIRE(loaded.levels.size() == report.levels.size());

  // re-serializing the parsed report reproduces the file byte for byte
  CHECK(format_sweep_report(loaded) == testutil::read_file(path));
}

TEST_CASE("svg scatter output", "[io]") {
  std::mt19937_64 g(131);
  std::vector<std::size_t> group_of;
  const Dataset ds = testutil::grouped_points(g, {{0, 0}, {40, 0}, {20, 35}}, 12, 2.0, &group_of);
  const LabelSet ls = LabelSet::from_pairs({{0, "g0"}, {12, "g1"}, {24, "g2"}});
  const ClusterResult res = run_sdc(ds, ls, Metric::euclidean);

  const std::string svg = format_scatter_svg(ds, res, ls);
  CHECK(svg.rfind("<svg", 0) == 0);

  std::size_t triangles = 0;
  for (std::size_t at = svg.find("<polygon"); at != std::string::npos;
       at = svg.find("<polygon", at + 1))
    ++triangles;
  CHECK(triangles == 3);  // one per labeled point

  std::set<std::string> colors;
  for (std::size_t at = svg.find("fill=\"#"); at != std::string::npos;
       at = svg.find("fill=\"#", at + 1))
    colors.insert(svg.substr(at + 6, 7));
  colors.erase("#ffffff");  // background
  colors.erase("#000000");
  CHECK(colors.size() == 3);  // one color per cluster

  // byte-deterministic
  CHECK(format_scatter_svg(ds, res, ls) == svg);

  // single cluster uses a single color
  const LabelSet one = LabelSet::from_pairs({{0, "only"}});
  const ClusterResult res1 = run_sdc(ds, one, Metric::euclidean);
  const std::string svg1 = format_scatter_svg(ds, res1, one);
  std::set<std::string> colors1;
  for (std::size_t at = svg1.find("fill=\"#"); at != std::string::npos;
       at = svg1.find("fill=\"#", at + 1))
    colors1.insert(svg1.substr(at + 6, 7));
  colors1.erase("#ffffff");
  colors1.erase("#000000");
  CHECK(colors1.size() == 1);

  // plots need two dimensions
  const Dataset line = Dataset::numeric(1, {0, 1, 2});
  const LabelSet ll = LabelSet::from_pairs({{0, "x"}});
  const ClusterResult resl = run_sdc(line, ll, Metric::euclidean);
  CHECK_THROWS_AS(format_scatter_svg(line, resl, ll), std::invalid_argument);
}
