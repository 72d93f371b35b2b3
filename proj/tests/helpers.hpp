#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "msns/ball.hpp"
#include "msns/dataset.hpp"
#include "msns/oracle.hpp"

namespace msns::test {

// Brute-force minimizer over a 2-D ball: square interior grid plus a
// boundary arc sweep, both at the given resolution.
template <class F>
std::pair<Vector, double> grid_argmin_ball(const BallSet& set, double resolution, F&& obj) {
  const double r = set.radius();
  Vector best(2);
  double best_val = std::numeric_limits<double>::infinity();
  Vector p(2);

  const long steps = static_cast<long>(std::ceil(2 * r / resolution));
  for (long i = 0; i <= steps; ++i) {
    p[0] = -r + 2 * r * static_cast<double>(i) / static_cast<double>(steps);
    for (long j = 0; j <= steps; ++j) {
      p[1] = -r + 2 * r * static_cast<double>(j) / static_cast<double>(steps);
      if (p.squaredNorm() > set.radius_sq) continue;
      const double v = obj(p);
      if (v < best_val) {
        best_val = v;
        best = p;
      }
    }
  }

  const long arc_steps = static_cast<long>(std::ceil(2 * M_PI * r / resolution));
  for (long i = 0; i < arc_steps; ++i) {
    const double theta = 2 * M_PI * static_cast<double>(i) / static_cast<double>(arc_steps);
    p[0] = r * std::cos(theta);
    p[1] = r * std::sin(theta);
    const double v = obj(p);
    if (v < best_val) {
      best_val = v;
      best = p;
    }
  }
  return {best, best_val};
}

// Grid maximizer of u(1-s) - mu u^2/2 over u in [0,1].
inline std::pair<double, double> hinge_grid_max(double s, double mu, long grid_n = 100000) {
  double best_val = -std::numeric_limits<double>::infinity();
  double best_u = 0;
  for (long i = 0; i <= grid_n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(grid_n);
    const double v = u * (1.0 - s) - 0.5 * mu * u * u;
    if (v > best_val) {
      best_val = v;
      best_u = u;
    }
  }
  return {best_val, best_u};
}

inline Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                            const std::vector<double>& labels, std::string name = "test") {
  Dataset d;
  d.features.resize(static_cast<long>(rows.size()), static_cast<long>(rows.at(0).size()));
  d.labels.resize(static_cast<long>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      d.features(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    }
    d.labels[static_cast<long>(i)] = labels[i];
  }
  d.name = std::move(name);
  return d;
}

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("msns_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Oracle with identically zero gradients.
class ZeroOracle final : public StochasticOracle {
 public:
  explicit ZeroOracle(long dim) : dim_(dim) {}
  OracleBatch sample_batch(const Vector& x, long m, Engine&) const override {
    (void)x;
    return OracleBatch{0.0, Vector::Zero(dim_), 0.0, m};
  }
  long dim() const override { return dim_; }

 private:
  long dim_;
};

// Deterministic 1-D quadratic (x - target)^2.
class QuadraticOracle final : public StochasticOracle {
 public:
  explicit QuadraticOracle(double target) : target_(target) {}
  OracleBatch sample_batch(const Vector& x, long m, Engine&) const override {
    OracleBatch b;
    b.value = (x[0] - target_) * (x[0] - target_);
    b.grad = Vector::Constant(1, 2.0 * (x[0] - target_));
    b.u_mean = 0.0;
    b.m = m;
    return b;
  }
  long dim() const override { return 1; }

 private:
  double target_;
};

}  // namespace msns::test
