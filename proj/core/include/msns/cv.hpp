#pragma once

#include "msns/pipeline.hpp"

namespace msns {

// Shared value grid for t and lambda1.
struct CvGrid {
  std::vector<double> values;
  int folds = 3;
  int repeats = 1;
};

struct CvCell {
  double t = 0;
  double lambda1 = 0;
  double mean_accuracy = 0;
  double mean_N = 0;
  double mean_m = 0;
};

struct CvResult {
  double best_t = 0;
  double best_lambda1 = 0;
  std::vector<CvCell> table;  // t-major, ascending in both coordinates
};

// Per-cell score = mean validation accuracy over repeats x folds. Each task
// draws its randomness from hash(master_seed, t_index, lambda_index, repeat,
// fold) so results do not depend on scheduling. Ties prefer smaller t, then
// smaller lambda1.
CvResult cv_grid_search(const Dataset& data, const CvGrid& grid, const RunConfig& solver_config,
                        std::uint64_t master_seed);

}  // namespace msns
