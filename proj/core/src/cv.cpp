#include "msns/cv.hpp"

#include <algorithm>
#include <cmath>

#include "msns/parallel.hpp"

namespace msns {

namespace {

struct CellTask {
  std::size_t ti, li;
  int repeat, fold;
};

struct CellStats {
  double acc_sum = 0;
  double n_sum = 0;
  double m_sum = 0;
  long runs = 0;
};

}  // namespace

CvResult cv_grid_search(const Dataset& data, const CvGrid& grid, const RunConfig& solver_config,
                        std::uint64_t master_seed) {
  if (grid.values.empty()) throw ConfigError("cv: empty grid");
  if (grid.folds < 2) throw ConfigError("cv: folds must be >= 2");
  if (grid.repeats < 1) throw ConfigError("cv: repeats must be >= 1");
  if (data.size() < grid.folds) throw DataError("cv: fewer samples than folds");
  for (double value : grid.values) {
    if (!(value > 0)) throw ConfigError("cv: grid values must be positive");
  }
  CvGrid sorted_grid = grid;
  std::sort(sorted_grid.values.begin(), sorted_grid.values.end());
  const std::vector<double>& values = sorted_grid.values;

  // one fold partition per repeat, shared across all grid cells
  std::vector<std::vector<std::pair<Dataset, Dataset>>> splits;
  splits.reserve(static_cast<std::size_t>(grid.repeats));
  for (int rep = 0; rep < grid.repeats; ++rep) {
    splits.push_back(kfold_split(data, grid.folds,
                                 derive_seed(master_seed, {stream::cv_split,
                                                           static_cast<std::uint64_t>(rep)})));
  }

  const std::size_t v = values.size();
  std::vector<CellTask> tasks;
  for (std::size_t ti = 0; ti < v; ++ti)
    for (std::size_t li = 0; li < v; ++li)
      for (int rep = 0; rep < grid.repeats; ++rep)
        for (int fold = 0; fold < grid.folds; ++fold) tasks.push_back({ti, li, rep, fold});

  struct TaskOut {
    double acc = 0, n = 0, m = 0;
  };
  std::vector<TaskOut> results(tasks.size());

  run_tasks(tasks.size(), solver_config.threads, [&](std::size_t i) {
    const CellTask& task = tasks[i];
    const double t = values[task.ti];
    const double lambda1 = values[task.li];
    try {
      RunConfig cell_cfg = solver_config;
      cell_cfg.t = t;
      cell_cfg.lambda1 = lambda1;
      cell_cfg.gap = false;
      cell_cfg.seed = derive_seed(master_seed, {stream::cv_cell, task.ti, task.li,
                                                static_cast<std::uint64_t>(task.repeat),
                                                static_cast<std::uint64_t>(task.fold)});

      const auto& [train, validate] = splits[static_cast<std::size_t>(task.repeat)]
                                            [static_cast<std::size_t>(task.fold)];
      EstimatedModel model = estimate_model(train, lambda1);
      const ProxSetup prox = ProxSetup::euclidean(BallSet(t, train.dim()));
      const BudgetResult budget = derive_budgets(cell_cfg, model, train, prox);
      const SeedResult r =
          run_one(cell_cfg.solver, train, &validate, model, budget, cell_cfg, /*run_seed=*/0);
      results[i] = {r.accuracy, static_cast<double>(budget.N), static_cast<double>(budget.m)};
    } catch (const std::exception& e) {
      throw SolverError("cv: cell (t=" + format_g17(t) + ", lambda1=" + format_g17(lambda1) +
                        ", repeat=" + std::to_string(task.repeat) +
                        ", fold=" + std::to_string(task.fold) + ") failed: " + e.what());
    }
  });

  std::vector<CellStats> stats(v * v);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CellStats& s = stats[tasks[i].ti * v + tasks[i].li];
    s.acc_sum += results[i].acc;
    s.n_sum += results[i].n;
    s.m_sum += results[i].m;
    ++s.runs;
  }

  CvResult out;
  out.table.reserve(v * v);
  double best_acc = -1;
  for (std::size_t ti = 0; ti < v; ++ti) {
    for (std::size_t li = 0; li < v; ++li) {
      const CellStats& s = stats[ti * v + li];
      CvCell cell;
      cell.t = values[ti];
      cell.lambda1 = values[li];
      cell.mean_accuracy = s.acc_sum / static_cast<double>(s.runs);
      cell.mean_N = s.n_sum / static_cast<double>(s.runs);
      cell.mean_m = s.m_sum / static_cast<double>(s.runs);
      out.table.push_back(cell);
      // strict improvement keeps the first-seen maximum: ties resolve to
      // smaller t, then smaller lambda1 (values are scanned ascending)
      if (cell.mean_accuracy > best_acc) {
        best_acc = cell.mean_accuracy;
        out.best_t = cell.t;
        out.best_lambda1 = cell.lambda1;
      }
    }
  }
  return out;
}

}  // namespace msns
