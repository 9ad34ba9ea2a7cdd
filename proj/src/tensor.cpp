#include "tpm/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace tpm {

namespace {

// x (x) x (x) ... (x) x, `copies` times, first factor most significant.
Eigen::VectorXd kron_power(const Eigen::VectorXd& x, int copies) {
  Eigen::VectorXd out = Eigen::VectorXd::Ones(1);
  for (int c = 0; c < copies; ++c) {
    Eigen::VectorXd next(out.size() * x.size());
    for (Eigen::Index a = 0; a < out.size(); ++a) next.segment(a * x.size(), x.size()) = out(a) * x;
    out = std::move(next);
  }
  return out;
}

}  // namespace

SymTensor make_sym_tensor(const Eigen::MatrixXd& factors, const Eigen::VectorXd& lambdas, int order) {
  if (order < 2) throw Error(ErrorKind::InvalidArgs, "tensor order must be >= 2");
  if (factors.cols() != lambdas.size())
    throw Error(ErrorKind::DimensionMismatch, "number of columns (" + std::to_string(factors.cols()) +
                                                  ") differs from number of coefficients (" +
                                                  std::to_string(lambdas.size()) + ")");
  if (factors.rows() < 1 || factors.cols() < 1)
    throw Error(ErrorKind::EmptyDecomposition, "no terms given");

  std::vector<Eigen::VectorXd> kept;
  std::vector<double> kept_lambda;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < factors.cols(); ++i) {
    const double norm = factors.col(i).norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw Error(ErrorKind::InvalidArgs, "column " + std::to_string(i) + " is zero or not finite");
    // Columns already unit within tolerance are kept bit-for-bit.
    const bool unit = std::abs(norm - 1.0) <= kStructureTol;
    Eigen::VectorXd u = unit ? Eigen::VectorXd(factors.col(i)) : Eigen::VectorXd(factors.col(i) / norm);
    const double lambda = unit ? lambdas(i) : lambdas(i) * std::pow(norm, order);
    scale = std::max(scale, std::abs(lambda));

    bool merged = false;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const double sign = kept[k].dot(u) < 0.0 ? -1.0 : 1.0;
      if ((kept[k] - sign * u).norm() <= kStructureTol) {
        kept_lambda[k] += ipow(sign, order) * lambda;
        merged = true;
        break;
      }
    }
    if (!merged) {
      kept.push_back(std::move(u));
      kept_lambda.push_back(lambda);
    }
  }

  std::vector<Eigen::Index> survivors;
  for (std::size_t k = 0; k < kept.size(); ++k)
    if (std::abs(kept_lambda[k]) > kStructureTol * scale) survivors.push_back(static_cast<Eigen::Index>(k));
  if (survivors.empty()) throw Error(ErrorKind::EmptyDecomposition, "all terms cancel or vanish");

  Eigen::MatrixXd v(factors.rows(), static_cast<Eigen::Index>(survivors.size()));
  Eigen::VectorXd l(static_cast<Eigen::Index>(survivors.size()));
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    v.col(j) = kept[static_cast<std::size_t>(survivors[static_cast<std::size_t>(j)])];
    l(j) = kept_lambda[static_cast<std::size_t>(survivors[static_cast<std::size_t>(j)])];
  }
  return SymTensor(std::move(v), std::move(l), order);
}

double SymTensor::frobenius_norm() const {
  const Eigen::MatrixXd gram = factors_.transpose() * factors_;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j)
      sum += lambdas_(i) * lambdas_(j) * ipow(gram(i, j), order_);
  return std::sqrt(std::max(sum, 0.0));
}

DenseTensor::DenseTensor(Eigen::Index dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || order < 1) throw Error(ErrorKind::InvalidArgs, "dense tensor needs n >= 1, d >= 1");
  entries_.assign(static_cast<std::size_t>(ipow<std::size_t>(static_cast<std::size_t>(dim), order)), 0.0);
}

std::size_t DenseTensor::flat_index(const std::vector<Eigen::Index>& index) const {
  if (static_cast<int>(index.size()) != order_)
    throw Error(ErrorKind::DimensionMismatch, "multi-index length differs from tensor order");
  std::size_t flat = 0;
  for (auto i : index) flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return flat;
}

std::vector<Eigen::Index> DenseTensor::multi_index(std::size_t flat) const {
  std::vector<Eigen::Index> index(static_cast<std::size_t>(order_));
  for (int k = order_ - 1; k >= 0; --k) {
    index[static_cast<std::size_t>(k)] = static_cast<Eigen::Index>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return index;
}

double DenseTensor::at(const std::vector<Eigen::Index>& index) const { return entries_[flat_index(index)]; }

double DenseTensor::frobenius_norm() const {
  double sum = 0.0;
  for (double e : entries_) sum += e * e;
  return std::sqrt(sum);
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  if (other.dim_ != dim_ || other.order_ != order_)
    throw Error(ErrorKind::DimensionMismatch, "dense tensor shapes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& e : entries_) e *= s;
  return *this;
}

Eigen::VectorXd DenseTensor::contract_vec(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from tensor dimension");
  const Eigen::VectorXd weights = kron_power(x, order_ - 1);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (Eigen::Index a = 0; a < weights.size(); ++a)
    for (Eigen::Index b = 0; b < dim_; ++b)
      out(b) += entries_[static_cast<std::size_t>(a * dim_ + b)] * weights(a);
  return out;
}

Eigen::MatrixXd DenseTensor::contract_mat(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from tensor dimension");
  if (order_ < 2) throw Error(ErrorKind::InvalidArgs, "contract_mat needs order >= 2");
  const Eigen::VectorXd weights = kron_power(x, order_ - 2);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  const Eigen::Index block = dim_ * dim_;
  for (Eigen::Index a = 0; a < weights.size(); ++a)
    for (Eigen::Index b = 0; b < dim_; ++b)
      for (Eigen::Index c = 0; c < dim_; ++c)
        out(b, c) += entries_[static_cast<std::size_t>(a * block + b * dim_ + c)] * weights(a);
  return out;
}

bool DenseTensor::is_symmetric(double tol, int samples, std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> pick(0, entries_.size() - 1);
  for (int s = 0; s < samples; ++s) {
    const std::size_t flat = pick(gen);
    auto index = multi_index(flat);
    std::shuffle(index.begin(), index.end(), gen);
    if (std::abs(entries_[flat] - entries_[flat_index(index)]) > tol) return false;
  }
  return true;
}

DenseTensor to_dense(const SymTensor& t, std::size_t cap) {
  const double count = std::pow(static_cast<double>(t.dim()), t.order());
  if (count > static_cast<double>(cap))
    throw Error(ErrorKind::CapExceeded, "n^d = " + std::to_string(static_cast<long long>(count)) +
                                            " exceeds the dense cap of " + std::to_string(cap));
  DenseTensor dense(t.dim(), t.order());
  for (Eigen::Index i = 0; i < t.rank(); ++i) {
    const Eigen::VectorXd term = kron_power(t.factors().col(i), t.order());
    for (Eigen::Index f = 0; f < term.size(); ++f) dense[static_cast<std::size_t>(f)] += t.lambdas()(i) * term(f);
  }
  return dense;
}

}  // namespace tpm
