#include "msns/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msns/parallel.hpp"

namespace msns {

namespace fs = std::filesystem;

namespace {

// Tracks emitted files so a failing stage can remove partial outputs.
class OutputTracker {
 public:
  explicit OutputTracker(std::string dir) : dir_(std::move(dir)) {}

  std::string write(const std::string& filename, const std::string& content) {
    if (dir_.empty()) throw ConfigError("config: out_dir (or --out) is required");
    fs::create_directories(dir_);
    const std::string full = (fs::path(dir_) / filename).string();
    std::ofstream out(full, std::ios::binary);
    if (!out || !(out << content)) throw DataError("cannot write '" + full + "'");
    out.close();
    written_.push_back(full);
    return full;
  }

  void discard_all() {
    for (const auto& f : written_) {
      std::error_code ec;
      fs::remove(f, ec);
    }
    written_.clear();
  }

  const std::vector<std::string>& files() const { return written_; }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "k,oracle_calls,wall_time_s,smoothed_train_obj,exact_train_obj\n";
  for (const TraceRow& row : trace) {
    out << row.k << ',' << row.oracle_calls << ',' << format_g17(row.wall_time_s) << ','
        << format_g17(row.smoothed_train_obj) << ',' << format_g17(row.exact_train_obj) << '\n';
  }
  return out.str();
}

std::string trace_filename(SolverKind kind, std::uint64_t seed) {
  return "trace_" + to_string(kind) + "_seed" + std::to_string(seed) + ".csv";
}

void emit_problem(std::ostringstream& out, const RunConfig& cfg) {
  out << "problem = " << to_string(cfg.problem) << "\n";
  if (cfg.problem == ProblemKind::synthetic) {
    out << "n = " << cfg.n << "\n";
    out << "train_size = " << cfg.train_size << "\n";
    out << "test_size = " << cfg.test_size << "\n";
  } else {
    out << "path = " << cfg.path << "\n";
  }
  out << "master_seed = " << cfg.seed << "\n";
  out << "eps = " << format_g17(cfg.eps) << "\n";
  out << "lambda1 = " << format_g17(cfg.lambda1) << "\n";
  out << "t = " << format_g17(cfg.t) << "\n";
}

void emit_params(std::ostringstream& out, const EstimatedModel& model,
                 const BudgetResult& budget) {
  out << "A_norm = " << format_g17(model.A_norm) << "\n";
  out << "lambda_max_Sigma = " << format_g17(model.lam_max) << "\n";
  out << "L_f = " << format_g17(model.L_f) << "\n";
  if (model.sigma2_estimated) out << "sigma2 = " << format_g17(model.sigma2) << "\n";
  out << "N = " << budget.N << "\n";
  out << "m = " << budget.m << "\n";
  out << "mu = " << format_g17(budget.mu) << "\n";
  out << "L_h_mu = " << format_g17(budget.L_h_mu) << "\n";
  out << "L = " << format_g17(budget.L) << "\n";
}

void emit_seed_result(std::ostringstream& out, const std::string& prefix, const SeedResult& r) {
  out << prefix << ".final_exact_train_obj = " << format_g17(r.final_exact_train_obj) << "\n";
  out << prefix << ".final_smoothed_train_obj = " << format_g17(r.final_smoothed_train_obj)
      << "\n";
  out << prefix << ".test_obj = " << format_g17(r.test_obj) << "\n";
  out << prefix << ".accuracy = " << format_g17(r.accuracy) << "\n";
  if (r.gap) out << prefix << ".gap = " << format_g17(*r.gap) << "\n";
  out << prefix << ".u_hat = " << format_g17(r.u_hat) << "\n";
  out << prefix << ".oracle_calls = " << r.oracle_calls << "\n";
  if (r.stop_index) out << prefix << ".stop_index = " << *r.stop_index << "\n";
  if (r.g_hat) out << prefix << ".g_hat = " << format_g17(*r.g_hat) << "\n";
  out << prefix << ".wall_time_s = " << format_g17(r.wall_time_s) << "\n";
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// unbiased sample variance; 0 for fewer than two values
double variance_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - mu) * (x - mu);
  return s / static_cast<double>(v.size() - 1);
}

std::vector<SeedResult> run_seeds(SolverKind kind, const ProblemData& problem,
                                  const EstimatedModel& model, const BudgetResult& budget,
                                  const RunConfig& cfg) {
  std::vector<SeedResult> results(cfg.seeds.size());
  const Dataset* test = problem.test ? &*problem.test : nullptr;
  run_tasks(cfg.seeds.size(), cfg.threads, [&](std::size_t i) {
    results[i] = run_one(kind, problem.train, test, model, budget, cfg, cfg.seeds[i]);
  });
  return results;
}

void fill_aggregates(SolveOutcome& outcome) {
  std::vector<double> test_obj, acc, wall, train_obj;
  for (const SeedResult& r : outcome.per_seed) {
    test_obj.push_back(r.test_obj);
    acc.push_back(r.accuracy);
    wall.push_back(r.wall_time_s);
    train_obj.push_back(r.final_exact_train_obj);
  }
  outcome.train_obj_mean = mean_of(train_obj);
  outcome.test_obj_mean = mean_of(test_obj);
  outcome.test_obj_var = variance_of(test_obj);
  outcome.accuracy_mean = mean_of(acc);
  outcome.wall_time_mean_s = mean_of(wall);
}

struct PreparedProblem {
  ProblemData data;
  EstimatedModel model;
  BudgetResult budget;
};

PreparedProblem prepare(const RunConfig& cfg) {
  PreparedProblem p;
  try {
    p.data = load_problem(cfg);
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string("stage data: ") + e.what());
  }
  try {
    p.model = estimate_model(p.data.train, cfg.lambda1);
    const ProxSetup prox = ProxSetup::euclidean(BallSet(cfg.t, p.data.train.dim()));
    p.budget = derive_budgets(cfg, p.model, p.data.train, prox);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("stage estimate: ") + e.what());
  } catch (const SolverError& e) {
    throw SolverError(std::string("stage estimate: ") + e.what());
  }
  return p;
}

}  // namespace

SolveOutcome run_solve(const RunConfig& cfg) {
  validate_config(cfg);
  validate_solve_fields(cfg);
  PreparedProblem p = prepare(cfg);

  SolveOutcome outcome;
  outcome.model = p.model;
  outcome.budget = p.budget;
  try {
    outcome.per_seed = run_seeds(cfg.solver, p.data, p.model, p.budget, cfg);
  } catch (const SolverError&) {
    throw;
  } catch (const std::exception& e) {
    throw SolverError(std::string("stage solve: ") + e.what());
  }
  fill_aggregates(outcome);

  std::ostringstream out;
  out << "command = solve\n";
  out << "solver = " << to_string(cfg.solver) << "\n";
  emit_problem(out, cfg);
  emit_params(out, p.model, p.budget);
  for (std::size_t i = 0; i < outcome.per_seed.size(); ++i) {
    emit_seed_result(out, "seed." + std::to_string(cfg.seeds[i]), outcome.per_seed[i]);
  }
  out << "aggregate.train_obj_mean = " << format_g17(outcome.train_obj_mean) << "\n";
  out << "aggregate.test_obj_mean = " << format_g17(outcome.test_obj_mean) << "\n";
  out << "aggregate.test_obj_var = " << format_g17(outcome.test_obj_var) << "\n";
  out << "aggregate.accuracy_mean = " << format_g17(outcome.accuracy_mean) << "\n";
  out << "aggregate.wall_time_mean_s = " << format_g17(outcome.wall_time_mean_s) << "\n";
  outcome.summary_text = out.str();

  if (!cfg.out_dir.empty()) {
    OutputTracker tracker(cfg.out_dir);
    try {
      for (std::size_t i = 0; i < outcome.per_seed.size(); ++i) {
        tracker.write(trace_filename(cfg.solver, cfg.seeds[i]),
                      trace_csv(outcome.per_seed[i].trace));
      }
      tracker.write("summary.txt", outcome.summary_text);
    } catch (...) {
      tracker.discard_all();
      throw;
    }
    outcome.files_written = tracker.files();
  }
  return outcome;
}

BenchOutcome run_bench(const RunConfig& cfg) {
  validate_config(cfg);
  validate_solve_fields(cfg);
  if (cfg.solvers.size() < 2) throw ConfigError("bench: needs at least two solvers");
  PreparedProblem p = prepare(cfg);

  BenchOutcome outcome;
  outcome.model = p.model;
  outcome.budget = p.budget;
  outcome.solvers = cfg.solvers;

  // flatten solver x seed into one task list; equal budget for every solver
  struct Task {
    std::size_t solver_idx, seed_idx;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < cfg.solvers.size(); ++s)
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) tasks.push_back({s, i});
  std::vector<SeedResult> flat(tasks.size());
  const Dataset* test = p.data.test ? &*p.data.test : nullptr;
  try {
    run_tasks(tasks.size(), cfg.threads, [&](std::size_t ti) {
      flat[ti] = run_one(cfg.solvers[tasks[ti].solver_idx], p.data.train, test, p.model,
                         p.budget, cfg, cfg.seeds[tasks[ti].seed_idx]);
    });
  } catch (const SolverError&) {
    throw;
  } catch (const std::exception& e) {
    throw SolverError(std::string("stage solve: ") + e.what());
  }
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    outcome.per_solver[cfg.solvers[tasks[ti].solver_idx]].push_back(flat[ti]);
  }

  std::ostringstream out;
  out << "command = bench\n";
  emit_problem(out, cfg);
  emit_params(out, p.model, p.budget);
  out << "oracle_budget = " << static_cast<long long>(p.budget.N + 1) * p.budget.m << "\n";
  for (SolverKind kind : cfg.solvers) {
    const auto& results = outcome.per_solver[kind];
    std::vector<double> train_obj, test_obj, acc, wall;
    for (std::size_t i = 0; i < results.size(); ++i) {
      emit_seed_result(out,
                       to_string(kind) + ".seed." + std::to_string(cfg.seeds[i]), results[i]);
      train_obj.push_back(results[i].final_exact_train_obj);
      test_obj.push_back(results[i].test_obj);
      acc.push_back(results[i].accuracy);
      wall.push_back(results[i].wall_time_s);
    }
    out << to_string(kind) << ".train_obj_mean = " << format_g17(mean_of(train_obj)) << "\n";
    out << to_string(kind) << ".test_obj_mean = " << format_g17(mean_of(test_obj)) << "\n";
    out << to_string(kind) << ".test_obj_var = " << format_g17(variance_of(test_obj)) << "\n";
    out << to_string(kind) << ".accuracy_mean = " << format_g17(mean_of(acc)) << "\n";
    out << to_string(kind) << ".wall_time_mean_s = " << format_g17(mean_of(wall)) << "\n";
  }
  outcome.summary_text = out.str();

  if (!cfg.out_dir.empty()) {
    OutputTracker tracker(cfg.out_dir);
    try {
      for (SolverKind kind : cfg.solvers) {
        const auto& results = outcome.per_solver[kind];
        for (std::size_t i = 0; i < results.size(); ++i) {
          tracker.write(trace_filename(kind, cfg.seeds[i]), trace_csv(results[i].trace));
        }
      }
      tracker.write("bench_summary.txt", outcome.summary_text);
    } catch (...) {
      tracker.discard_all();
      throw;
    }
    outcome.files_written = tracker.files();
  }
  return outcome;
}

CvOutcome run_cv(const RunConfig& cfg) {
  validate_config(cfg);
  validate_budget_inputs(cfg);
  ProblemData problem;
  try {
    problem = load_problem(cfg);
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string("stage data: ") + e.what());
  }

  CvGrid grid{cfg.cv_values, cfg.cv_folds, cfg.cv_repeats};
  CvOutcome outcome;
  outcome.result = cv_grid_search(problem.train, grid, cfg, cfg.seed);

  std::ostringstream csv;
  csv << "t,lambda1,mean_accuracy,mean_N,mean_m\n";
  for (const CvCell& cell : outcome.result.table) {
    csv << format_g17(cell.t) << ',' << format_g17(cell.lambda1) << ','
        << format_g17(cell.mean_accuracy) << ',' << format_g17(cell.mean_N) << ','
        << format_g17(cell.mean_m) << '\n';
  }
  outcome.table_csv = csv.str();

  std::ostringstream out;
  out << "command = cv\n";
  emit_problem(out, cfg);
  out << "cv_folds = " << grid.folds << "\n";
  out << "cv_repeats = " << grid.repeats << "\n";
  out << "best_t = " << format_g17(outcome.result.best_t) << "\n";
  out << "best_lambda1 = " << format_g17(outcome.result.best_lambda1) << "\n";
  outcome.summary_text = out.str();

  if (!cfg.out_dir.empty()) {
    OutputTracker tracker(cfg.out_dir);
    try {
      tracker.write("cv_table.csv", outcome.table_csv);
      tracker.write("cv_summary.txt", outcome.summary_text);
    } catch (...) {
      tracker.discard_all();
      throw;
    }
    outcome.files_written = tracker.files();
  }
  return outcome;
}

GenOutcome run_gen(const RunConfig& cfg) {
  validate_config(cfg);
  if (cfg.problem != ProblemKind::synthetic) throw ConfigError("gen: problem must be synthetic");
  if (!(cfg.t > 0)) throw ConfigError("config: t must be positive");

  SyntheticData data;
  try {
    data = generate_synthetic(cfg.n, cfg.train_size, cfg.test_size, cfg.t, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("gen: ") + e.what());
  }

  nlohmann::json manifest;
  manifest["seed"] = cfg.seed;
  manifest["n"] = cfg.n;
  manifest["train_size"] = cfg.train_size;
  manifest["test_size"] = cfg.test_size;
  manifest["t"] = cfg.t;
  manifest["train_file"] = "train.csv";
  manifest["test_file"] = "test.csv";
  manifest["x_bar"] = std::vector<double>(data.x_bar.data(), data.x_bar.data() + data.x_bar.size());

  GenOutcome outcome;
  OutputTracker tracker(cfg.out_dir);
  try {
    std::ostringstream train_csv, test_csv;
    for (const Dataset* d : {&data.train, &data.test}) {
      std::ostringstream& buf = (d == &data.train) ? train_csv : test_csv;
      for (long i = 0; i < d->size(); ++i) {
        buf << (d->labels[i] > 0 ? "1" : "-1");
        for (long j = 0; j < d->dim(); ++j) buf << ',' << format_g17(d->features(i, j));
        buf << '\n';
      }
    }
    tracker.write("train.csv", train_csv.str());
    tracker.write("test.csv", test_csv.str());
    tracker.write("manifest.json", manifest.dump(2) + "\n");
  } catch (...) {
    tracker.discard_all();
    throw;
  }
  outcome.files_written = tracker.files();
  return outcome;
}

EstimateOutcome run_estimate(const RunConfig& cfg) {
  validate_config(cfg);
  validate_budget_inputs(cfg);
  if (!(cfg.t > 0)) throw ConfigError("config: t must be positive");
  PreparedProblem p = prepare(cfg);

  EstimateOutcome outcome;
  outcome.model = p.model;
  outcome.budget = p.budget;

  std::ostringstream out;
  out << "command = estimate\n";
  emit_problem(out, cfg);
  emit_params(out, p.model, p.budget);
  out << "oracle_budget = " << static_cast<long long>(p.budget.N + 1) * p.budget.m << "\n";
  outcome.text = out.str();

  if (!cfg.out_dir.empty()) {
    OutputTracker tracker(cfg.out_dir);
    tracker.write("estimate.txt", outcome.text);
  }
  return outcome;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"mini-batch stochastic smoothing solvers for ball-constrained SVM"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed_flag = -1;
  bool have_seed = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides out_dir)");
    sub->add_option_function<std::int64_t>(
        "--seed",
        [&](const std::int64_t& v) {
          seed_flag = v;
          have_seed = true;
        },
        "master seed override");
  };

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a synthetic dataset");
  CLI::App* cmd_solve = app.add_subcommand("solve", "run one solver over the seed list");
  CLI::App* cmd_cv = app.add_subcommand("cv", "3-fold cross-validation grid search");
  CLI::App* cmd_bench = app.add_subcommand("bench", "equal-budget solver comparison");
  CLI::App* cmd_estimate = app.add_subcommand("estimate", "print constants and budgets");
  for (CLI::App* sub : {cmd_gen, cmd_solve, cmd_cv, cmd_bench, cmd_estimate}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (have_seed) cfg.seed = static_cast<std::uint64_t>(seed_flag);
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    if (app.got_subcommand(cmd_gen)) {
      GenOutcome outcome = run_gen(cfg);
      for (const auto& f : outcome.files_written) std::cout << "wrote " << f << "\n";
    } else if (app.got_subcommand(cmd_solve)) {
      SolveOutcome outcome = run_solve(cfg);
      std::cout << outcome.summary_text;
      for (const auto& f : outcome.files_written) std::cout << "wrote " << f << "\n";
    } else if (app.got_subcommand(cmd_cv)) {
      CvOutcome outcome = run_cv(cfg);
      std::cout << outcome.summary_text;
      for (const auto& f : outcome.files_written) std::cout << "wrote " << f << "\n";
    } else if (app.got_subcommand(cmd_bench)) {
      BenchOutcome outcome = run_bench(cfg);
      std::cout << outcome.summary_text;
      for (const auto& f : outcome.files_written) std::cout << "wrote " << f << "\n";
    } else if (app.got_subcommand(cmd_estimate)) {
      EstimateOutcome outcome = run_estimate(cfg);
      std::cout << outcome.text;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace msns
