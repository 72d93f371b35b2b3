#include "msns/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "msns/common.hpp"

namespace msns {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config: bad seed for '" + key + "': '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean for '" + key + "': '" + value + "'");
}

}  // namespace

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::synthetic: return "synthetic";
    case ProblemKind::csv: return "csv";
    case ProblemKind::libsvm: return "libsvm";
  }
  return "?";
}

std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::msns: return "msns";
    case SolverKind::mmdsa: return "mmdsa";
    case SolverKind::rspg: return "rspg";
  }
  return "?";
}

SolverKind solver_from_string(const std::string& s) {
  if (s == "msns") return SolverKind::msns;
  if (s == "mmdsa") return SolverKind::mmdsa;
  if (s == "rspg") return SolverKind::rspg;
  throw ConfigError("config: unknown solver '" + s + "'");
}

ProblemKind problem_from_string(const std::string& s) {
  if (s == "synthetic") return ProblemKind::synthetic;
  if (s == "csv") return ProblemKind::csv;
  if (s == "libsvm") return ProblemKind::libsvm;
  throw ConfigError("config: unknown problem '" + s + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::stringstream ss(text);
  std::string line;
  long line_no = 0;

  while (std::getline(ss, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(line_no));
    if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");

    if (key == "problem") {
      cfg.problem = problem_from_string(value);
    } else if (key == "n") {
      cfg.n = parse_long(key, value);
    } else if (key == "train_size") {
      cfg.train_size = parse_long(key, value);
    } else if (key == "test_size") {
      cfg.test_size = parse_long(key, value);
    } else if (key == "path") {
      cfg.path = value;
    } else if (key == "test_path") {
      cfg.test_path = value;
    } else if (key == "label_map") {
      for (const auto& pair : split_list(value)) {
        const std::size_t colon = pair.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= pair.size()) {
          throw ConfigError("config: bad label_map pair '" + pair + "'");
        }
        const int target = static_cast<int>(parse_long(key, pair.substr(colon + 1)));
        if (target != 1 && target != -1) {
          throw ConfigError("config: label_map targets must be +-1");
        }
        cfg.label_map[pair.substr(0, colon)] = target;
      }
    } else if (key == "eps") {
      cfg.eps = parse_double(key, value);
    } else if (key == "lambda1") {
      cfg.lambda1 = parse_double(key, value);
    } else if (key == "t") {
      cfg.t = parse_double(key, value);
    } else if (key == "solver") {
      cfg.solver = solver_from_string(value);
    } else if (key == "solvers") {
      for (const auto& s : split_list(value)) cfg.solvers.push_back(solver_from_string(s));
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "seeds") {
      for (const auto& s : split_list(value)) cfg.seeds.push_back(parse_u64(key, s));
    } else if (key == "N") {
      cfg.N = parse_long(key, value);
    } else if (key == "m") {
      cfg.m = parse_long(key, value);
    } else if (key == "mu") {
      cfg.mu = parse_double(key, value);
    } else if (key == "x0") {
      std::vector<double> x0;
      for (const auto& s : split_list(value)) x0.push_back(parse_double(key, s));
      if (x0.empty()) throw ConfigError("config: empty x0");
      cfg.x0 = std::move(x0);
    } else if (key == "trace_stride") {
      cfg.trace_stride = parse_long(key, value);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_long(key, value));
    } else if (key == "gap") {
      cfg.gap = parse_bool(key, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "cv_values") {
      cfg.cv_values.clear();
      for (const auto& s : split_list(value)) cfg.cv_values.push_back(parse_double(key, s));
    } else if (key == "cv_folds") {
      cfg.cv_folds = static_cast<int>(parse_long(key, value));
    } else if (key == "cv_repeats") {
      cfg.cv_repeats = static_cast<int>(parse_long(key, value));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "problem = " << to_string(cfg.problem) << "\n";
  if (cfg.problem == ProblemKind::synthetic) {
    out << "n = " << cfg.n << "\n";
    out << "train_size = " << cfg.train_size << "\n";
    out << "test_size = " << cfg.test_size << "\n";
  } else {
    out << "path = " << cfg.path << "\n";
    if (!cfg.test_path.empty()) out << "test_path = " << cfg.test_path << "\n";
  }
  if (!cfg.label_map.empty()) {
    out << "label_map = ";
    bool first = true;
    for (const auto& [raw, target] : cfg.label_map) {
      if (!first) out << ",";
      out << raw << ":" << target;
      first = false;
    }
    out << "\n";
  }
  out << "eps = " << format_g17(cfg.eps) << "\n";
  out << "lambda1 = " << format_g17(cfg.lambda1) << "\n";
  out << "t = " << format_g17(cfg.t) << "\n";
  out << "solver = " << to_string(cfg.solver) << "\n";
  if (!cfg.solvers.empty()) {
    out << "solvers = ";
    for (std::size_t i = 0; i < cfg.solvers.size(); ++i) {
      if (i) out << ",";
      out << to_string(cfg.solvers[i]);
    }
    out << "\n";
  }
  out << "seed = " << cfg.seed << "\n";
  if (!cfg.seeds.empty()) {
    out << "seeds = ";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
      if (i) out << ",";
      out << cfg.seeds[i];
    }
    out << "\n";
  }
  if (cfg.N) out << "N = " << *cfg.N << "\n";
  if (cfg.m) out << "m = " << *cfg.m << "\n";
  if (cfg.mu) out << "mu = " << format_g17(*cfg.mu) << "\n";
  if (cfg.x0) {
    out << "x0 = ";
    for (std::size_t i = 0; i < cfg.x0->size(); ++i) {
      if (i) out << ",";
      out << format_g17((*cfg.x0)[i]);
    }
    out << "\n";
  }
  out << "trace_stride = " << cfg.trace_stride << "\n";
  out << "threads = " << cfg.threads << "\n";
  out << "gap = " << (cfg.gap ? "true" : "false") << "\n";
  if (!cfg.out_dir.empty()) out << "out_dir = " << cfg.out_dir << "\n";
  out << "cv_values = ";
  for (std::size_t i = 0; i < cfg.cv_values.size(); ++i) {
    if (i) out << ",";
    out << format_g17(cfg.cv_values[i]);
  }
  out << "\n";
  out << "cv_folds = " << cfg.cv_folds << "\n";
  out << "cv_repeats = " << cfg.cv_repeats << "\n";
  return out.str();
}

void validate_config(const RunConfig& cfg) {
  if (cfg.lambda1 < 0) throw ConfigError("config: lambda1 must be >= 0");
  if (cfg.problem == ProblemKind::synthetic) {
    if (cfg.n < 1 || cfg.train_size < 1 || cfg.test_size < 1) {
      throw ConfigError("config: synthetic problems need n, train_size, test_size >= 1");
    }
  } else if (cfg.path.empty()) {
    throw ConfigError("config: file problems need a path");
  }
  if (cfg.N && *cfg.N < 0) throw ConfigError("config: N override must be >= 0");
  if (cfg.m && *cfg.m < 1) throw ConfigError("config: m override must be >= 1");
  if (cfg.mu && !(*cfg.mu > 0)) throw ConfigError("config: mu override must be positive");
  if (cfg.trace_stride < 0) throw ConfigError("config: trace_stride must be >= 0");
  if (cfg.cv_folds < 2) throw ConfigError("config: cv_folds must be >= 2");
  if (cfg.cv_repeats < 1) throw ConfigError("config: cv_repeats must be >= 1");
  for (double v : cfg.cv_values) {
    if (!(v > 0)) throw ConfigError("config: cv_values must be positive");
  }
}

void validate_budget_inputs(const RunConfig& cfg) {
  const bool all_overridden = cfg.N && cfg.m && cfg.mu;
  if (!all_overridden && !(cfg.eps > 0)) {
    throw ConfigError("config: eps must be positive unless N, m and mu are all overridden");
  }
}

void validate_solve_fields(const RunConfig& cfg) {
  validate_budget_inputs(cfg);
  if (cfg.seeds.empty()) throw ConfigError("config: seeds must be nonempty");
  if (!(cfg.t > 0)) throw ConfigError("config: t must be positive");
}

}  // namespace msns
