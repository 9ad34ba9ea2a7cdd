#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include <Eigen/Core>

#include "tpm/error.hpp"
#include "tpm/tensor.hpp"

namespace tpm::test {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(gen);
  return m;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& gen, Eigen::Index n) {
  Eigen::VectorXd x = random_matrix(gen, n, 1);
  return x / x.norm();
}

/// Random decomposition with n <= max_n, 2 <= d <= max_d, r <= max_r.
inline SymTensor random_tensor(std::mt19937_64& gen, int max_n, int max_d, int max_r) {
  std::uniform_int_distribution<int> pn(1, max_n), pd(2, max_d), pr(1, max_r);
  std::uniform_real_distribution<double> pl(-2.0, 2.0);
  const int n = pn(gen), d = pd(gen), r = pr(gen);
  Eigen::VectorXd l(r);
  for (int i = 0; i < r; ++i) l(i) = pl(gen);
  return make_sym_tensor(random_matrix(gen, n, r), l, d);
}

/// Kind of the Error thrown by f, or nullopt if f returns normally.
inline std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace tpm::test
