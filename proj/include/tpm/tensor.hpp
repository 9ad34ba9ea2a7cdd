#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "tpm/error.hpp"

namespace tpm {

/// Tolerance for unit-norm columns, colinearity merging and zero-coefficient pruning.
inline constexpr double kStructureTol = 1e-12;
/// Default acceptance threshold on ||T.v^{d-1} - mu v|| for eigenvectors.
inline constexpr double kEigenTol = 1e-10;
/// Default entry cap for the dense oracle representation.
inline constexpr std::size_t kDenseCap = 10'000'000;

/// x^k for a non-negative integer k, by repeated squaring.
template <typename Scalar>
Scalar ipow(Scalar x, int k) {
  Scalar result(1);
  while (k > 0) {
    if (k & 1) result *= x;
    x *= x;
    k >>= 1;
  }
  return result;
}

/// Symmetric tensor sum_i lambda_i v_i^{(x)d}, stored by its factors.
/// Columns of factors() have unit norm, no coefficient is zero and no two
/// columns are colinear. Immutable once built.
class SymTensor {
 public:
  const Eigen::MatrixXd& factors() const { return factors_; }
  const Eigen::VectorXd& lambdas() const { return lambdas_; }
  int order() const { return order_; }
  Eigen::Index dim() const { return factors_.rows(); }
  Eigen::Index rank() const { return factors_.cols(); }

  /// Frobenius norm via the Gram identity sum_ij l_i l_j <v_i, v_j>^d.
  double frobenius_norm() const;

 private:
  friend SymTensor make_sym_tensor(const Eigen::MatrixXd&, const Eigen::VectorXd&, int);
  SymTensor(Eigen::MatrixXd factors, Eigen::VectorXd lambdas, int order)
      : factors_(std::move(factors)), lambdas_(std::move(lambdas)), order_(order) {}

  Eigen::MatrixXd factors_;
  Eigen::VectorXd lambdas_;
  int order_;
};

/// Normalizes columns (lambda_i scaled by ||v_i||^d), merges colinear columns
/// (lambda_k + sign^d lambda_l), and drops terms whose coefficient vanishes.
/// Throws DimensionMismatch, InvalidArgs (zero column, d < 2) or
/// EmptyDecomposition if nothing survives.
SymTensor make_sym_tensor(const Eigen::MatrixXd& factors, const Eigen::VectorXd& lambdas, int order);

/// T . x^{d-1} = V diag(lambda) (V^T x)^{.(d-1)}. Works for real or complex x.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> contract_vec(
    const SymTensor& t, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() != t.dim())
    throw Error(ErrorKind::DimensionMismatch, "contract_vec: vector length differs from tensor dimension");
  const auto v = t.factors().template cast<Scalar>();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights = v.transpose() * x;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    weights(i) = Scalar(t.lambdas()(i)) * ipow(weights(i), t.order() - 1);
  return v * weights;
}

/// T . x^{d-2} = V diag(lambda) diag((V^T x)^{.(d-2)}) V^T.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> contract_mat(
    const SymTensor& t, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() != t.dim())
    throw Error(ErrorKind::DimensionMismatch, "contract_mat: vector length differs from tensor dimension");
  const auto v = t.factors().template cast<Scalar>();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights = v.transpose() * x;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    weights(i) = Scalar(t.lambdas()(i)) * ipow(weights(i), t.order() - 2);
  return v * weights.asDiagonal() * v.transpose();
}

/// Full n^d array, entries indexed with the first index most significant.
/// Used as a brute-force oracle and as the carrier for perturbed tensors.
class DenseTensor {
 public:
  DenseTensor(Eigen::Index dim, int order);

  Eigen::Index dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return entries_.size(); }

  double& operator[](std::size_t flat) { return entries_[flat]; }
  double operator[](std::size_t flat) const { return entries_[flat]; }
  double at(const std::vector<Eigen::Index>& index) const;
  std::size_t flat_index(const std::vector<Eigen::Index>& index) const;
  std::vector<Eigen::Index> multi_index(std::size_t flat) const;

  double frobenius_norm() const;
  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator*=(double s);

  /// Brute-force sum over all multi-indices; the last index stays free.
  Eigen::VectorXd contract_vec(const Eigen::VectorXd& x) const;
  /// Same, leaving the last two indices free.
  Eigen::MatrixXd contract_mat(const Eigen::VectorXd& x) const;

  /// Checks invariance under `samples` random transpositions of random entries.
  bool is_symmetric(double tol, int samples, std::uint64_t seed) const;

 private:
  Eigen::Index dim_;
  int order_;
  std::vector<double> entries_;
};

/// Throws CapExceeded when n^d exceeds `cap`.
DenseTensor to_dense(const SymTensor& t, std::size_t cap = kDenseCap);

inline Eigen::VectorXd contract_vec(const DenseTensor& t, const Eigen::VectorXd& x) {
  return t.contract_vec(x);
}

struct EigenResidual {
  double mu;        // Rayleigh value <T.v^{d-1}, v>
  double residual;  // ||T.v^{d-1} - mu v||
};

template <typename Tensor>
EigenResidual eigen_residual(const Tensor& t, const Eigen::VectorXd& v) {
  const Eigen::VectorXd image = contract_vec(t, v);
  const double mu = image.dot(v);
  return {mu, (image - mu * v).norm()};
}

inline bool is_eigenvector(const SymTensor& t, const Eigen::VectorXd& v, double tol = kEigenTol) {
  return eigen_residual(t, v).residual <= tol;
}

}  // namespace tpm
