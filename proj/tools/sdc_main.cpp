// Command line driver: cluster one dataset, sweep label budgets, or run the
// built-in oracle selfcheck.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdc/sdc.hpp"

namespace {

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("SDC_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

sdc::LoadedData load_for_metric(const sdc::DataFileSpec& spec, sdc::Metric metric) {
  return metric == sdc::Metric::euclidean ? sdc::load_numeric(spec)
                                          : sdc::load_categorical(spec);
}

int run_cluster(const std::string& data_path, const std::string& labels_path,
                const std::string& metric_name, int truth_col, char delimiter,
                const std::string& out_path, const std::string& plot_path,
                const std::string& cut_log_path) {
  const sdc::Metric metric = sdc::metric_from_name(metric_name);
  sdc::DataFileSpec spec{data_path, delimiter, std::nullopt};
  if (truth_col >= 0) spec.truth_column = static_cast<std::size_t>(truth_col);

  const sdc::LoadedData data = load_for_metric(spec, metric);
  const sdc::LabelSet labels = sdc::load_labels(labels_path);

  const sdc::ClusterResult result = sdc::run_sdc(data.dataset, labels, metric);

  std::printf("points: %zu  dim: %zu  labels: %zu  categories: %zu\n", data.dataset.size(),
              data.dataset.dim(), labels.size(), labels.n_categories());
  std::printf("sub-trees before merging: %zu  clusters: %zu  cuts: %zu\n", result.n_subtrees,
              result.n_clusters, result.cut_log.accepted_count());
  std::printf("timings_ms: mst=%.3f orient=%.3f cut=%.3f assign=%.3f\n", result.timing.mst_ms,
              result.timing.orient_ms, result.timing.cut_ms, result.timing.assign_ms);
  if (!data.truth.empty())
    std::printf("error rate over unlabeled points: %.6f\n",
                sdc::error_rate(result, data.truth, labels));

  if (!out_path.empty()) sdc::write_assignment(result, out_path);
  if (!cut_log_path.empty()) sdc::write_cut_log(result.cut_log, cut_log_path);
  if (!plot_path.empty()) sdc::emit_scatter_svg(data.dataset, result, labels, plot_path);
  return 0;
}

int run_sweep(const std::string& data_path, const std::string& metric_name, int truth_col,
              char delimiter, const std::vector<std::size_t>& budgets, std::size_t trials,
              std::uint64_t seed, const std::string& report_path, bool non_stratified,
              unsigned threads) {
  const sdc::Metric metric = sdc::metric_from_name(metric_name);
  sdc::DataFileSpec spec{data_path, delimiter, static_cast<std::size_t>(truth_col)};
  const sdc::LoadedData data = load_for_metric(spec, metric);

  sdc::SweepOptions opts;
  opts.stratified = !non_stratified;
  opts.threads = threads;
  const sdc::SweepReport report =
      sdc::sweep(data.dataset, data.truth, budgets, trials, seed, metric, opts);

  std::printf("points: %zu  dim: %zu  trials: %zu  seed: %llu  (mst %.1f ms, orient %.1f ms)\n",
              data.dataset.size(), data.dataset.dim(), report.trials,
              static_cast<unsigned long long>(report.seed), report.mst_ms, report.orient_ms);
  std::printf("%8s %10s %12s %12s %14s %14s %12s\n", "budget", "n_labeled", "mean_error",
              "stderr", "mean_subtrees", "mean_clusters", "mean_cut_ms");
  for (const sdc::SweepLevel& level : report.levels)
    std::printf("%8zu %10zu %12.6f %12.6f %14.2f %14.2f %12.3f\n", level.budget, level.n_labeled,
                level.mean_error, level.stderr_error, level.mean_subtrees, level.mean_clusters,
                level.mean_cut_ms);

  if (!report_path.empty()) sdc::write_sweep_report(report, report_path);
  return 0;
}

int run_selfcheck(std::uint64_t seed) {
  bool all_pass = true;
  for (const sdc::oracle::SelfcheckResult& r : sdc::oracle::run_selfcheck(seed)) {
    std::printf("%-26s %s  (%s)\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("selfcheck: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-supervised divisive clustering over a minimal spanning tree"};
  app.require_subcommand(1);

  // cluster
  std::string data_path, labels_path, metric_name, out_path, plot_path, cut_log_path;
  int truth_col = -1;
  char delimiter = ',';
  CLI::App* cluster = app.add_subcommand("cluster", "cluster one dataset with a label file");
  cluster->add_option("--data", data_path, "input table")->required();
  cluster->add_option("--labels", labels_path, "label file: index,category per line")->required();
  cluster->add_option("--metric", metric_name, "euclidean|mismatch")->required();
  cluster->add_option("--truth-col", truth_col, "0-based ground truth column");
  cluster->add_option("--delimiter", delimiter, "field delimiter (default ,)");
  cluster->add_option("--out", out_path, "assignment output path");
  cluster->add_option("--plot", plot_path, "SVG scatter output (2-D numeric data)");
  cluster->add_option("--cut-log", cut_log_path, "cut log output path");

  // sweep
  std::string sweep_data, sweep_metric, report_path;
  int sweep_truth_col = 0;
  char sweep_delimiter = ',';
  std::vector<std::size_t> budgets;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  bool non_stratified = false;
  unsigned threads = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "label-budget sweep with random label draws");
  sweep->add_option("--data", sweep_data, "input table")->required();
  sweep->add_option("--truth-col", sweep_truth_col, "0-based ground truth column")->required();
  sweep->add_option("--metric", sweep_metric, "euclidean|mismatch")->required();
  sweep->add_option("--budgets", budgets, "labels per category, comma separated")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", trials, "random label draws per budget (default 20)");
  CLI::Option* sweep_seed_opt = sweep->add_option("--seed", seed, "RNG seed (default $SDC_SEED or 1)");
  sweep->add_option("--report", report_path, "TSV report output path");
  sweep->add_flag("--non-stratified", non_stratified, "draw labels uniformly instead of per category");
  sweep->add_option("--threads", threads, "trial-level parallelism (results unchanged)");
  sweep->add_option("--delimiter", sweep_delimiter, "field delimiter (default ,)");

  // selfcheck
  std::uint64_t check_seed = 1;
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the built-in oracle suites");
  CLI::Option* check_seed_opt =
      selfcheck->add_option("--seed", check_seed, "RNG seed (default $SDC_SEED or 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cluster->parsed())
      return run_cluster(data_path, labels_path, metric_name, truth_col, delimiter, out_path,
                         plot_path, cut_log_path);
    if (sweep->parsed())
      return run_sweep(sweep_data, sweep_metric, sweep_truth_col, sweep_delimiter, budgets,
                       trials, resolve_seed(sweep_seed_opt, seed), report_path, non_stratified,
                       threads);
    if (selfcheck->parsed()) return run_selfcheck(resolve_seed(check_seed_opt, check_seed));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
