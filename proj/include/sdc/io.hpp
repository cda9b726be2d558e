#pragma once

// File surface: delimited numeric/categorical tables with an optional ground
// truth column, two-column label files, assignment/report/cut-log output, and
// an SVG scatter for 2-D results. All text is UTF-8 with \n line endings;
// floating point fields use fixed printf formats, so identical inputs yield
// byte-identical files (timing fields reflect wall-clock measurements and are
// the one exception to that).

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/dataset.hpp"
#include "sdc/divisive_cut.hpp"
#include "sdc/pipeline.hpp"

namespace sdc {

struct DataFileSpec {
  std::string path;
  char delimiter = ',';
  std::optional<std::size_t> truth_column;  // 0-based; excluded from the feature vector
};

struct LoadedData {
  Dataset dataset;
  std::vector<std::string> truth;  // one entry per point when truth_column was set
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) throw std::invalid_argument("empty output path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

// Lines with their 1-based numbers; skips blank lines, strips trailing \r.
inline std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

inline void split_fields(std::string_view line, char delim, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(delim, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

inline std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view cell, const std::string& path, std::size_t line_no,
                           std::size_t col) {
  cell = trimmed(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": column " +
                             std::to_string(col + 1) + ": not a number: '" +
                             std::string(cell) + "'");
  if (!std::isfinite(value))
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": column " +
                             std::to_string(col + 1) + ": non-finite value");
  return value;
}

struct RawTable {
  std::string buffer;
  std::vector<std::pair<std::size_t, std::string_view>> rows;  // views into buffer
  std::size_t n_cols = 0;
};

inline RawTable read_table(const DataFileSpec& spec) {
  RawTable table;
  table.buffer = read_file(spec.path);
  table.rows = lines_of(table.buffer);
  if (table.rows.empty()) throw std::runtime_error(spec.path + ": file has no data rows");

  std::vector<std::string_view> fields;
  split_fields(table.rows.front().second, spec.delimiter, fields);
  table.n_cols = fields.size();
  if (spec.truth_column && *spec.truth_column >= table.n_cols)
    throw std::invalid_argument(spec.path + ": truth column " +
                                std::to_string(*spec.truth_column) + " out of range (" +
                                std::to_string(table.n_cols) + " columns)");
  if (table.n_cols - (spec.truth_column ? 1 : 0) < 1)
    throw std::invalid_argument(spec.path + ": no feature columns left");
  return table;
}

}  // namespace detail

inline LoadedData load_numeric(const DataFileSpec& spec) {
  const detail::RawTable table = detail::read_table(spec);
  const std::size_t dim = table.n_cols - (spec.truth_column ? 1 : 0);

  std::vector<double> values;
  values.reserve(table.rows.size() * dim);
  std::vector<std::string> truth;
  if (spec.truth_column) truth.reserve(table.rows.size());

  std::vector<std::string_view> fields;
  for (const auto& [line_no, line] : table.rows) {
    detail::split_fields(line, spec.delimiter, fields);
    if (fields.size() != table.n_cols)
      throw std::runtime_error(spec.path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(table.n_cols) + " fields, got " +
                               std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (spec.truth_column && c == *spec.truth_column)
        truth.emplace_back(detail::trimmed(fields[c]));
      else
        values.push_back(detail::parse_double(fields[c], spec.path, line_no, c));
    }
  }
  return {Dataset::numeric(dim, std::move(values)), std::move(truth)};
}

inline LoadedData load_categorical(const DataFileSpec& spec) {
  const detail::RawTable table = detail::read_table(spec);
  const std::size_t dim = table.n_cols - (spec.truth_column ? 1 : 0);

  std::vector<std::string> tokens;
  tokens.reserve(table.rows.size() * dim);
  std::vector<std::string> truth;
  if (spec.truth_column) truth.reserve(table.rows.size());

  std::vector<std::string_view> fields;
  for (const auto& [line_no, line] : table.rows) {
    detail::split_fields(line, spec.delimiter, fields);
    if (fields.size() != table.n_cols)
      throw std::runtime_error(spec.path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(table.n_cols) + " fields, got " +
                               std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (spec.truth_column && c == *spec.truth_column)
        truth.emplace_back(detail::trimmed(fields[c]));
      else
        tokens.emplace_back(fields[c]);  // symbols taken verbatim, including "?"
    }
  }
  return {Dataset::categorical(dim, tokens), std::move(truth)};
}

// Two comma-separated columns: point index, category id. '#' lines ignored.
inline LabelSet load_labels(const std::string& path) {
  const std::string buffer = detail::read_file(path);
  std::vector<std::pair<std::size_t, std::string>> pairs;
  std::vector<std::string_view> fields;
  for (const auto& [line_no, line] : detail::lines_of(buffer)) {
    if (line.front() == '#') continue;
    detail::split_fields(line, ',', fields);
    if (fields.size() != 2)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'index,category'");
    const std::string_view idx_text = detail::trimmed(fields[0]);
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
    if (ec != std::errc{} || ptr != idx_text.data() + idx_text.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad point index '" +
                               std::string(idx_text) + "'");
    const std::string_view category = detail::trimmed(fields[1]);
    if (category.empty())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty category");
    pairs.emplace_back(idx, std::string(category));
  }
  return LabelSet::from_pairs(std::move(pairs));
}

// --- assignment files ------------------------------------------------------

inline std::string format_assignment(const ClusterResult& res) {
  std::string out;
  out.reserve(res.assignment.size() * 8);
  char buf[160];
  for (std::size_t i = 0; i < res.assignment.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%u,%s\n", i, res.assignment[i],
                  res.cluster_category[res.assignment[i]].c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "# n_clusters=%zu\n", res.n_clusters);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# timings_ms mst=%.3f orient=%.3f cut=%.3f assign=%.3f\n",
                res.timing.mst_ms, res.timing.orient_ms, res.timing.cut_ms,
                res.timing.assign_ms);
  out += buf;
  return out;
}

inline void write_assignment(const ClusterResult& res, const std::string& path) {
  detail::write_file(path, format_assignment(res));
}

struct AssignmentRow {
  std::size_t index = 0;
  std::uint32_t cluster = 0;
  std::string category;

  friend bool operator==(const AssignmentRow&, const AssignmentRow&) = default;
};

struct AssignmentFile {
  std::vector<AssignmentRow> rows;
  std::size_t n_clusters = 0;
};

inline AssignmentFile read_assignment(const std::string& path) {
  const std::string buffer = detail::read_file(path);
  AssignmentFile file;
  std::vector<std::string_view> fields;
  for (const auto& [line_no, line] : detail::lines_of(buffer)) {
    if (line.front() == '#') {
      const std::string_view prefix = "# n_clusters=";
      if (line.substr(0, prefix.size()) == prefix) {
        const std::string_view rest = line.substr(prefix.size());
        std::from_chars(rest.data(), rest.data() + rest.size(), file.n_clusters);
      }
      continue;
    }
    detail::split_fields(line, ',', fields);
    if (fields.size() != 3)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'index,cluster,category'");
    AssignmentRow row;
    std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), row.index);
    std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), row.cluster);
    row.category = std::string(fields[2]);
    file.rows.push_back(std::move(row));
  }
  return file;
}

// --- cut log ----------------------------------------------------------------

inline std::string format_cut_log(const CutLog& log) {
  std::string out = "# rank\tchild\tparent\tlength\tstatus\treason\n";
  char buf[200];
  for (const CutRecord& r : log.records) {
    std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%zu\t%.9g\t%s\t%s\n", r.rank, r.child, r.parent,
                  r.length, r.accepted ? "accepted" : "skipped", r.reason.c_str());
    out += buf;
  }
  return out;
}

inline void write_cut_log(const CutLog& log, const std::string& path) {
  detail::write_file(path, format_cut_log(log));
}

// --- sweep report -----------------------------------------------------------

inline std::string format_sweep_report(const SweepReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "# trials=%zu seed=%llu stratified=%d\n", report.trials,
                static_cast<unsigned long long>(report.seed), report.stratified ? 1 : 0);
  out += buf;
  out += "budget\tn_labeled\tmean_error\tstderr_error\tmean_subtrees\tmean_cut_ms\n";
  for (const SweepLevel& level : report.levels) {
    std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%.6f\t%.6f\t%.6f\t%.3f\n", level.budget,
                  level.n_labeled, level.mean_error, level.stderr_error, level.mean_subtrees,
                  level.mean_cut_ms);
    out += buf;
  }
  return out;
}

inline void write_sweep_report(const SweepReport& report, const std::string& path) {
  detail::write_file(path, format_sweep_report(report));
}

inline SweepReport read_sweep_report(const std::string& path) {
  const std::string buffer = detail::read_file(path);
  SweepReport report;
  std::vector<std::string_view> fields;
  for (const auto& [line_no, line] : detail::lines_of(buffer)) {
    if (line.front() == '#') {
      unsigned long long seed = 0;
      int stratified = 1;
      std::size_t trials = 0;
      if (std::sscanf(std::string(line).c_str(), "# trials=%zu seed=%llu stratified=%d", &trials,
                      &seed, &stratified) == 3) {
        report.trials = trials;
        report.seed = seed;
        report.stratified = stratified != 0;
      }
      continue;
    }
    if (line.substr(0, 6) == "budget") continue;  // column header
    detail::split_fields(line, '\t', fields);
    if (fields.size() != 6)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 6 columns");
    SweepLevel level;
    std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), level.budget);
    std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), level.n_labeled);
    level.mean_error = detail::parse_double(fields[2], path, line_no, 2);
    level.stderr_error = detail::parse_double(fields[3], path, line_no, 3);
    level.mean_subtrees = detail::parse_double(fields[4], path, line_no, 4);
    level.mean_cut_ms = detail::parse_double(fields[5], path, line_no, 5);
    report.levels.push_back(level);
  }
  return report;
}

// --- scatter plot -----------------------------------------------------------

inline constexpr std::array<const char*, 10> kClusterPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// 2-D numeric data only. Unlabeled points are circles, labeled points are
// triangles; fill color follows the cluster id.
inline std::string format_scatter_svg(const Dataset& ds, const ClusterResult& res,
                                      const LabelSet& ls) {
  if (ds.kind() != DataKind::numeric || ds.dim() != 2)
    throw std::invalid_argument("scatter plot requires a 2-D numeric dataset");
  if (res.assignment.size() != ds.size())
    throw std::invalid_argument("result does not match dataset size");

  const double width = 640.0, height = 480.0, margin = 24.0;
  double min_x = ds.numeric_row(0)[0], max_x = min_x;
  double min_y = ds.numeric_row(0)[1], max_y = min_y;
  for (std::size_t i = 1; i < ds.size(); ++i) {
    const auto row = ds.numeric_row(i);
    min_x = std::min(min_x, row[0]);
    max_x = std::max(max_x, row[0]);
    min_y = std::min(min_y, row[1]);
    max_y = std::max(max_y, row[1]);
  }
  const double span_x = max_x - min_x;
  const double span_y = max_y - min_y;
  double scale = std::min(span_x > 0 ? (width - 2 * margin) / span_x : 1e300,
                          span_y > 0 ? (height - 2 * margin) / span_y : 1e300);
  if (!std::isfinite(scale)) scale = 1.0;  // all points coincide
  const double off_x = (width - scale * span_x) / 2.0;
  const double off_y = (height - scale * span_y) / 2.0;

  auto to_px = [&](double x, double y) {
    // SVG y axis grows downward
    return std::pair<double, double>{off_x + (x - min_x) * scale,
                                     height - (off_y + (y - min_y) * scale)};
  };

  const std::vector<std::int32_t> label = ls.dense_codes(ds.size());

  std::string out;
  out.reserve(ds.size() * 64);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  out += buf;
  std::snprintf(buf, sizeof(buf), "<rect width=\"%.0f\" height=\"%.0f\" fill=\"#ffffff\"/>\n",
                width, height);
  out += buf;

  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (label[i] >= 0) continue;
    const auto row = ds.numeric_row(i);
    const auto [cx, cy] = to_px(row[0], row[1]);
    const char* color = kClusterPalette[res.assignment[i] % kClusterPalette.size()];
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.4\" fill=\"%s\"/>\n",
                  cx, cy, color);
    out += buf;
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (label[i] < 0) continue;
    const auto row = ds.numeric_row(i);
    const auto [cx, cy] = to_px(row[0], row[1]);
    const char* color = kClusterPalette[res.assignment[i] % kClusterPalette.size()];
    std::snprintf(buf, sizeof(buf),
                  "<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" fill=\"%s\" "
                  "stroke=\"#000000\" stroke-width=\"1\"/>\n",
                  cx, cy - 6.0, cx - 5.2, cy + 3.0, cx + 5.2, cy + 3.0, color);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

inline void emit_scatter_svg(const Dataset& ds, const ClusterResult& res, const LabelSet& ls,
                             const std::string& path) {
  detail::write_file(path, format_scatter_svg(ds, res, ls));
}

}  // namespace sdc
