#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msns/common.hpp"
#include "msns/rng.hpp"

namespace msns {

struct Sample {
  Vector z;
  double y;  // strictly +1 or -1
};

struct Dataset {
  RowMatrix features;  // one sample per row
  Vector labels;       // +-1 entries
  std::string name;
  long dropped_rows = 0;  // rows skipped on load (missing values)

  long size() const { return features.rows(); }
  long dim() const { return features.cols(); }
  Sample sample(long i) const;
  void validate() const;
};

struct SyntheticData {
  Dataset train;
  Dataset test;
  Vector x_bar;  // labeling vector, drawn uniformly in the ball ||x||^2 <= t
};

// Feature entries are standard normal draws masked by independent
// Bernoulli(0.1); labels are sign(<x_bar, z>) with ties mapped to +1.
SyntheticData generate_synthetic(long n, long train_size, long test_size, double t,
                                 std::uint64_t seed);

// Raw label token -> -1/+1.
using LabelMap = std::map<std::string, int>;
LabelMap parse_label_map(const std::string& text);

// CSV: first column label, remaining columns features. Optional first-line
// directive "#label_map 2:-1 4:1". Rows containing missing values (empty
// field or "?") are dropped and counted. Column-count mismatch is an error.
Dataset load_csv(const std::string& path, const LabelMap& label_map = {});

// LIBSVM: "label idx:val ...", 1-based strictly increasing indices per line,
// densified to the maximum index seen in the file.
Dataset load_libsvm(const std::string& path, const LabelMap& label_map = {});

void write_csv(const Dataset& data, const std::string& path);

// Seeded shuffle, then contiguous folds; the first (count mod k) folds get
// one extra element. The folds partition 0..count-1.
std::vector<std::vector<long>> kfold_indices(long count, int k, std::uint64_t seed);
std::vector<std::pair<Dataset, Dataset>> kfold_split(const Dataset& data, int k,
                                                     std::uint64_t seed);
Dataset subset(const Dataset& data, const std::vector<long>& indices);

}  // namespace msns
