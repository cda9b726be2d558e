#pragma once

// End-to-end pipeline: spanning tree, orientation, divisive cutting, root
// assignment, category merge. Also the label-budget sweep harness, which
// builds the tree and orientation once (labels do not affect them) and reruns
// only the cut and assign phases per label draw.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdc/dataset.hpp"
#include "sdc/divisive_cut.hpp"
#include "sdc/intree.hpp"
#include "sdc/mst.hpp"
#include "sdc/rng.hpp"

namespace sdc {

struct StepTimings {
  double mst_ms = 0.0;
  double orient_ms = 0.0;
  double cut_ms = 0.0;
  double assign_ms = 0.0;
};

struct ClusterResult {
  std::vector<std::uint32_t> assignment;      // cluster id per point
  std::vector<std::string> cluster_category;  // cluster id -> category
  std::size_t n_clusters = 0;
  std::size_t n_subtrees = 0;  // components before same-category merging
  CutLog cut_log;
  StepTimings timing;
};

struct MergeResult {
  std::vector<std::uint32_t> assignment;
  std::vector<std::string> cluster_category;
  std::size_t n_clusters = 0;
  std::size_t n_subtrees = 0;
};

// Components whose labels share a category collapse into one cluster, so the
// cluster count always equals the category count of the label set. Cluster
// ids follow the label set's category numbering.
inline MergeResult merge_by_category(const Forest& f, const LabelSet& ls) {
  const std::size_t n = f.size();
  std::unordered_map<std::size_t, std::uint32_t> comp_category;
  for (const auto& entry : ls.entries()) {
    const std::size_t r = f.find_root(entry.first);
    auto [it, inserted] = comp_category.try_emplace(r, entry.second);
    if (!inserted && it->second != entry.second)
      throw std::logic_error("impure component in final forest");
  }

  MergeResult out;
  out.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.is_root(i)) ++out.n_subtrees;
    const auto it = comp_category.find(f.find_root(i));
    if (it == comp_category.end())
      throw std::logic_error("unlabeled component in final forest");
    out.assignment[i] = it->second;
  }
  out.cluster_category = ls.categories();
  out.n_clusters = ls.n_categories();
  return out;
}

namespace detail {

inline double ms_between(std::chrono::steady_clock::time_point a,
                         std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace detail

inline ClusterResult run_sdc(const Dataset& ds, const LabelSet& ls, Metric m) {
  validate(ds, ls);
  validate_metric(ds, m);

  const auto t0 = std::chrono::steady_clock::now();
  const SpanningTree tree = build_mst_prim(ds, m);
  const auto t1 = std::chrono::steady_clock::now();
  // Any root gives the same partition (the cut rules only see undirected
  // component structure); 0 keeps runs reproducible.
  const InTree it = orient(tree, 0);
  const auto t2 = std::chrono::steady_clock::now();
  CutOutcome cut = divisive_cut(it, tree, ls);
  const auto t3 = std::chrono::steady_clock::now();
  MergeResult merged = merge_by_category(cut.forest, ls);
  const auto t4 = std::chrono::steady_clock::now();

  ClusterResult res;
  res.assignment = std::move(merged.assignment);
  res.cluster_category = std::move(merged.cluster_category);
  res.n_clusters = merged.n_clusters;
  res.n_subtrees = merged.n_subtrees;
  res.cut_log = std::move(cut.log);
  res.timing = {detail::ms_between(t0, t1), detail::ms_between(t1, t2),
                detail::ms_between(t2, t3), detail::ms_between(t3, t4)};
  return res;
}

// Fraction of falsely assigned points among the unlabeled ones. Defined as 0
// when every point is labeled.
inline double error_rate(const ClusterResult& res, const std::vector<std::string>& truth,
                         const LabelSet& ls) {
  const std::size_t n = res.assignment.size();
  if (truth.size() != n)
    throw std::invalid_argument("ground truth must cover every point");
  for (const auto& entry : ls.entries()) {
    if (entry.first >= n)
      throw std::out_of_range("label index " + std::to_string(entry.first) + " out of range");
    if (truth[entry.first] != ls.categories()[entry.second])
      throw std::invalid_argument("ground truth contradicts the label at point " +
                                  std::to_string(entry.first));
  }

  const std::size_t unlabeled = n - ls.size();
  if (unlabeled == 0) return 0.0;

  const std::vector<std::int32_t> label = ls.dense_codes(n);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    if (truth[i] != res.cluster_category[res.assignment[i]]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(unlabeled);
}

struct SweepOptions {
  bool stratified = true;  // equal labels per true category; false draws uniformly over all points
  unsigned threads = 1;    // trial-level parallelism; results do not depend on it
};

struct SweepLevel {
  std::size_t budget = 0;     // requested labels per category
  std::size_t n_labeled = 0;  // labels actually drawn per trial
  double mean_error = 0.0;
  double stderr_error = 0.0;  // sample stddev / sqrt(trials); 0 for a single trial
  double mean_subtrees = 0.0;
  double mean_cut_ms = 0.0;
  double mean_clusters = 0.0;  // after merging; equals each draw's category count
};

struct SweepReport {
  std::vector<SweepLevel> levels;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  double mst_ms = 0.0;     // one-time cost shared by every trial
  double orient_ms = 0.0;
};

inline SweepReport sweep(const Dataset& ds, const std::vector<std::string>& truth,
                         const std::vector<std::size_t>& budgets, std::size_t trials,
                         std::uint64_t seed, Metric m, SweepOptions opts = {}) {
  validate_metric(ds, m);
  const std::size_t n = ds.size();
  if (truth.size() != n) throw std::invalid_argument("ground truth must cover every point");
  if (budgets.empty()) throw std::invalid_argument("no budgets given");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");

  // category pools in first-seen order
  std::vector<std::string> cat_names;
  std::unordered_map<std::string, std::size_t> cat_index;
  std::vector<std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = cat_index.try_emplace(truth[i], cat_names.size());
    if (inserted) {
      cat_names.push_back(truth[i]);
      pools.emplace_back();
    }
    pools[it->second].push_back(i);
  }
  const std::size_t kc = cat_names.size();

  std::size_t min_pool = n;
  for (const auto& p : pools) min_pool = std::min(min_pool, p.size());
  for (std::size_t b : budgets) {
    if (b < 1) throw std::invalid_argument("budget must be >= 1");
    if (opts.stratified && b > min_pool)
      throw std::invalid_argument("budget " + std::to_string(b) +
                                  " exceeds the smallest category population (" +
                                  std::to_string(min_pool) + ")");
    if (!opts.stratified && b * kc > n)
      throw std::invalid_argument("budget " + std::to_string(b) +
                                  " asks for more labels than points");
  }

  SweepReport report;
  report.trials = trials;
  report.seed = seed;
  report.stratified = opts.stratified;

  const auto t0 = std::chrono::steady_clock::now();
  const SpanningTree tree = build_mst_prim(ds, m);
  const auto t1 = std::chrono::steady_clock::now();
  const InTree it = orient(tree, 0);
  const auto t2 = std::chrono::steady_clock::now();
  report.mst_ms = detail::ms_between(t0, t1);
  report.orient_ms = detail::ms_between(t1, t2);

  struct Trial {
    double error = 0.0;
    double cut_ms = 0.0;
    std::size_t subtrees = 0;
    std::size_t clusters = 0;
    std::size_t n_labeled = 0;
  };

  for (std::size_t li = 0; li < budgets.size(); ++li) {
    const std::size_t budget = budgets[li];
    std::vector<Trial> results(trials);

    auto run_trial = [&](std::size_t trial) {
      std::mt19937_64 g(rng::derive_seed(seed, li, trial));
      std::vector<std::pair<std::size_t, std::string>> pairs;
      if (opts.stratified) {
        pairs.reserve(budget * kc);
        for (std::size_t ci = 0; ci < kc; ++ci)
          for (std::size_t idx : rng::sample_without_replacement(pools[ci], budget, g))
            pairs.emplace_back(idx, cat_names[ci]);
      } else {
        pairs.reserve(budget * kc);
        for (std::size_t idx : rng::sample_indices(n, budget * kc, g))
          pairs.emplace_back(idx, truth[idx]);
      }
      const LabelSet ls = LabelSet::from_pairs(std::move(pairs));

      CutOutcome cut = divisive_cut(it, tree, ls);
      MergeResult merged = merge_by_category(cut.forest, ls);

      ClusterResult res;
      res.assignment = std::move(merged.assignment);
      res.cluster_category = std::move(merged.cluster_category);
      res.n_clusters = merged.n_clusters;

      Trial& out = results[trial];
      out.error = error_rate(res, truth, ls);
      out.cut_ms = cut.log.elapsed_ms;
      out.subtrees = merged.n_subtrees;
      out.clusters = merged.n_clusters;
      out.n_labeled = ls.size();
    };

    if (opts.threads <= 1 || trials == 1) {
      for (std::size_t trial = 0; trial < trials; ++trial) run_trial(trial);
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr first_error;
      std::mutex error_mutex;
      const unsigned worker_count =
          static_cast<unsigned>(std::min<std::size_t>(opts.threads, trials));
      std::vector<std::thread> workers;
      workers.reserve(worker_count);
      for (unsigned w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
          for (std::size_t trial = next.fetch_add(1); trial < trials;
               trial = next.fetch_add(1)) {
            try {
              run_trial(trial);
            } catch (...) {
              std::lock_guard<std::mutex> lock(error_mutex);
              if (!first_error) first_error = std::current_exception();
            }
          }
        });
      }
      for (auto& w : workers) w.join();
      if (first_error) std::rethrow_exception(first_error);
    }

    SweepLevel level;
    level.budget = budget;
    level.n_labeled = results[0].n_labeled;

    double err_sum = 0.0;
    for (const Trial& tr : results) {
      err_sum += tr.error;
      level.mean_subtrees += static_cast<double>(tr.subtrees);
      level.mean_cut_ms += tr.cut_ms;
      level.mean_clusters += static_cast<double>(tr.clusters);
    }
    const double tcount = static_cast<double>(trials);
    level.mean_error = err_sum / tcount;
    level.mean_subtrees /= tcount;
    level.mean_cut_ms /= tcount;
    level.mean_clusters /= tcount;

    if (trials > 1) {
      double ss = 0.0;
      for (const Trial& tr : results) {
        const double d = tr.error - level.mean_error;
        ss += d * d;
      }
      level.stderr_error = std::sqrt(ss / (tcount - 1.0)) / std::sqrt(tcount);
    }

    report.levels.push_back(level);
  }
  return report;
}

}  // namespace sdc
