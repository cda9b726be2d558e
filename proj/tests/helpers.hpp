#pragma once

// Shared test utilities: temp files, deterministic generators, and masking of
// wall-clock fields for byte-identity comparisons.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdc/sdc.hpp"

namespace testutil {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("sdc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the wall-clock fields (timing footer lines, mean_cut_ms column) so
// the rest of the bytes can be compared exactly across runs.
inline std::string mask_timings(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line)) {
    if (line.rfind("# timings_ms", 0) == 0) {
      out += "# timings_ms <masked>\n";
      continue;
    }
    // sweep report rows: budget\tn_labeled\t...\tmean_cut_ms
    std::size_t tabs = 0;
    for (char c : line) tabs += (c == '\t');
    if (tabs == 5 && line.rfind("budget", 0) != 0 && line.rfind('#', 0) != 0) {
      out += line.substr(0, line.rfind('\t')) + "\t<masked>\n";
      continue;
    }
    out += line + "\n";
  }
  return out;
}

// Well separated point groups around the given centers.
inline sdc::Dataset grouped_points(std::mt19937_64& g,
                                   const std::vector<std::pair<double, double>>& centers,
                                   std::size_t per_group, double spread,
                                   std::vector<std::size_t>* group_of = nullptr) {
  std::vector<double> values;
  values.reserve(centers.size() * per_group * 2);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t i = 0; i < per_group; ++i) {
      values.push_back(centers[c].first + (sdc::rng::unit_real(g) - 0.5) * spread);
      values.push_back(centers[c].second + (sdc::rng::unit_real(g) - 0.5) * spread);
      if (group_of) group_of->push_back(c);
    }
  }
  return sdc::Dataset::numeric(2, std::move(values));
}

// The five-point chain fixture: 1-D points 0,1,6,8,12 whose minimal spanning
// tree is the path 0-1-2-3-4 with edge lengths 1,5,2,4.
inline sdc::Dataset chain_dataset() { return sdc::Dataset::numeric(1, {0, 1, 6, 8, 12}); }

inline sdc::SpanningTree chain_tree() {
  sdc::SpanningTree t;
  t.n_nodes = 5;
  t.edges = {{0, 1, 1.0}, {1, 2, 5.0}, {2, 3, 2.0}, {3, 4, 4.0}};
  t.total_weight = sdc::total_weight(t);
  return t;
}

}  // namespace testutil
