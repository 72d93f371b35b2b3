#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace msns {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Error taxonomy matching the CLI exit-code contract:
// config errors -> 1, data errors -> 2, solver errors -> 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_finite(const Vector& v, const char* what);
void require_same_dim(const Vector& a, const Vector& b, const char* what);

// Shortest stable text form with 17 significant digits.
std::string format_g17(double x);

}  // namespace msns
