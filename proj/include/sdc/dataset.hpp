#pragma once

// Points, partial labels and the two distance metrics. Datasets and label
// sets are immutable after construction and safe to read from any number of
// threads; distance computations are pure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sdc {

enum class DataKind { numeric, categorical };
enum class Metric { euclidean, mismatch };

inline const char* name_of(Metric m) {
  return m == Metric::euclidean ? "euclidean" : "mismatch";
}

inline Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "mismatch") return Metric::mismatch;
  throw std::invalid_argument("unknown metric: " + name);
}

inline DataKind kind_required_by(Metric m) {
  return m == Metric::euclidean ? DataKind::numeric : DataKind::categorical;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Count of positions whose symbols differ. Integer-valued, widened to double
// so edge weights have one type everywhere.
inline double mismatch_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++diff;
  return static_cast<double>(diff);
}

inline double mismatch_distance(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++diff;
  return static_cast<double>(diff);
}

// Rectangular collection of points, all numeric or all categorical.
// Categorical symbols are interned to small codes at construction; a missing
// value marker such as "?" is an ordinary symbol that matches itself and
// mismatches everything else.
class Dataset {
 public:
  static Dataset numeric(std::size_t dim, std::vector<double> values) {
    check_shape(dim, values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!std::isfinite(values[i]))
        throw std::invalid_argument("non-finite coordinate at point " +
                                    std::to_string(i / dim) + ", column " +
                                    std::to_string(i % dim));
    Dataset ds;
    ds.kind_ = DataKind::numeric;
    ds.dim_ = dim;
    ds.n_ = values.size() / dim;
    ds.num_ = std::move(values);
    return ds;
  }

  static Dataset categorical(std::size_t dim, const std::vector<std::string>& tokens) {
    check_shape(dim, tokens.size());
    Dataset ds;
    ds.kind_ = DataKind::categorical;
    ds.dim_ = dim;
    ds.n_ = tokens.size() / dim;
    ds.cat_.reserve(tokens.size());
    std::unordered_map<std::string, std::int32_t> codes;
    for (const std::string& tok : tokens) {
      auto [it, inserted] = codes.try_emplace(tok, static_cast<std::int32_t>(ds.symbols_.size()));
      if (inserted) ds.symbols_.push_back(tok);
      ds.cat_.push_back(it->second);
    }
    return ds;
  }

  DataKind kind() const { return kind_; }
  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> numeric_row(std::size_t i) const {
    require_kind(DataKind::numeric);
    check_index(i);
    return {num_.data() + i * dim_, dim_};
  }

  std::span<const std::int32_t> categorical_row(std::size_t i) const {
    require_kind(DataKind::categorical);
    check_index(i);
    return {cat_.data() + i * dim_, dim_};
  }

  const std::string& token_at(std::size_t i, std::size_t col) const {
    require_kind(DataKind::categorical);
    check_index(i);
    return symbols_[static_cast<std::size_t>(cat_[i * dim_ + col])];
  }

  double distance(std::size_t i, std::size_t j, Metric m) const {
    if (kind_required_by(m) != kind_)
      throw std::invalid_argument(std::string(name_of(m)) +
                                  " metric does not apply to this dataset kind");
    check_index(i);
    check_index(j);
    if (m == Metric::euclidean) {
      const double* a = num_.data() + i * dim_;
      const double* b = num_.data() + j * dim_;
      double acc = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    const std::int32_t* a = cat_.data() + i * dim_;
    const std::int32_t* b = cat_.data() + j * dim_;
    std::size_t diff = 0;
    for (std::size_t c = 0; c < dim_; ++c)
      if (a[c] != b[c]) ++diff;
    return static_cast<double>(diff);
  }

 private:
  Dataset() = default;

  static void check_shape(std::size_t dim, std::size_t total) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (dim > 0 && total % dim != 0)
      throw std::invalid_argument("value count is not a multiple of the dimension");
    if (total / dim < 2) throw std::invalid_argument("dataset needs at least 2 points");
  }

  void require_kind(DataKind k) const {
    if (kind_ != k) throw std::logic_error("accessor does not match dataset kind");
  }

  void check_index(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("point index " + std::to_string(i) + " out of range");
  }

  DataKind kind_ = DataKind::numeric;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> num_;        // row-major coordinates
  std::vector<std::int32_t> cat_;  // row-major interned symbols
  std::vector<std::string> symbols_;
};

// Partial supervision: point index -> category id. Categories are interned in
// order of first appearance over the index-sorted entries, which fixes the
// cluster id numbering downstream.
class LabelSet {
 public:
  LabelSet() = default;

  static LabelSet from_pairs(std::vector<std::pair<std::size_t, std::string>> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    LabelSet ls;
    std::unordered_map<std::string, std::uint32_t> codes;
    ls.entries_.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (i > 0 && raw[i].first == raw[i - 1].first)
        throw std::invalid_argument("duplicate label for point index " +
                                    std::to_string(raw[i].first));
      auto [it, inserted] =
          codes.try_emplace(raw[i].second, static_cast<std::uint32_t>(ls.categories_.size()));
      if (inserted) ls.categories_.push_back(raw[i].second);
      ls.entries_.emplace_back(raw[i].first, it->second);
    }
    return ls;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t n_categories() const { return categories_.size(); }
  const std::vector<std::string>& categories() const { return categories_; }

  // (point index, category code), sorted by point index
  const std::vector<std::pair<std::size_t, std::uint32_t>>& entries() const { return entries_; }

  // -1 when the point carries no label
  std::int32_t code_at(std::size_t point) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), point,
                               [](const auto& e, std::size_t p) { return e.first < p; });
    if (it == entries_.end() || it->first != point) return -1;
    return static_cast<std::int32_t>(it->second);
  }

  std::vector<std::int32_t> dense_codes(std::size_t n) const {
    std::vector<std::int32_t> out(n, -1);
    for (const auto& e : entries_) {
      if (e.first >= n)
        throw std::out_of_range("label index " + std::to_string(e.first) +
                                " out of range (n=" + std::to_string(n) + ")");
      out[e.first] = static_cast<std::int32_t>(e.second);
    }
    return out;
  }

 private:
  std::vector<std::pair<std::size_t, std::uint32_t>> entries_;
  std::vector<std::string> categories_;
};

inline void validate(const Dataset& ds, const LabelSet& ls) {
  if (ls.empty()) throw std::invalid_argument("label set is empty");
  for (const auto& e : ls.entries())
    if (e.first >= ds.size())
      throw std::out_of_range("label index " + std::to_string(e.first) +
                              " out of range (n=" + std::to_string(ds.size()) + ")");
}

inline void validate_metric(const Dataset& ds, Metric m) {
  if (kind_required_by(m) != ds.kind())
    throw std::invalid_argument(std::string(name_of(m)) + " metric requires a " +
                                (m == Metric::euclidean ? "numeric" : "categorical") +
                                " dataset");
}

}  // namespace sdc
