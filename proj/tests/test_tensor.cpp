#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "support.hpp"
#include "tpm/error.hpp"
#include "tpm/frames.hpp"
#include "tpm/io.hpp"
#include "tpm/tensor.hpp"

using namespace tpm;

namespace {

const double kH = std::sqrt(3.0) / 2.0;

SymTensor mb(int d) { return frame_tensor(mercedes_benz(), d); }

}  // namespace

TEST_CASE("make_sym_tensor examples") {
  Eigen::MatrixXd v(2, 3);
  v << 0, kH, -kH, 1, -0.5, -0.5;
  const SymTensor t = make_sym_tensor(v, Eigen::Vector3d::Ones(), 3);
  CHECK(t.rank() == 3);

  Eigen::MatrixXd pm(2, 2);
  pm << 0.6, -0.6, 0.8, -0.8;
  CHECK(test::kind_of([&] { make_sym_tensor(pm, Eigen::Vector2d(1, 1), 3); }) == ErrorKind::EmptyDecomposition);

  Eigen::MatrixXd same(2, 2);
  same << 0.6, 0.6, 0.8, 0.8;
  const SymTensor merged = make_sym_tensor(same, Eigen::Vector2d(1, 2), 4);
  CHECK(merged.rank() == 1);
  CHECK(merged.lambdas()(0) == doctest::Approx(3.0));
}

TEST_CASE("make_sym_tensor normalizes and preserves the tensor") {
  Eigen::MatrixXd v(2, 1);
  v << 0.0, 2.0;
  const SymTensor t = make_sym_tensor(v, Eigen::VectorXd::Ones(1), 3);
  CHECK(t.factors().col(0).norm() == doctest::Approx(1.0));
  CHECK(t.lambdas()(0) == doctest::Approx(8.0));
  CHECK(test::kind_of([&] { make_sym_tensor(Eigen::MatrixXd::Zero(2, 1), Eigen::VectorXd::Ones(1), 3); }) ==
        ErrorKind::InvalidArgs);
  CHECK(test::kind_of([&] { make_sym_tensor(v, Eigen::VectorXd::Ones(2), 3); }) == ErrorKind::DimensionMismatch);
  CHECK(test::kind_of([&] { make_sym_tensor(v, Eigen::VectorXd::Ones(1), 1); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("contract_vec examples") {
  const Eigen::VectorXd v1 = Eigen::Vector2d(0, 1);
  CHECK((contract_vec(mb(3), v1) - 0.75 * v1).norm() < 1e-15);
  CHECK((contract_vec(mb(5), v1) - (15.0 / 16.0) * v1).norm() < 1e-15);
  CHECK(contract_vec(mb(4), Eigen::VectorXd::Zero(2)).norm() == 0.0);
  CHECK(test::kind_of([&] { contract_vec(mb(3), Eigen::VectorXd::Zero(3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("contract_mat examples") {
  const Eigen::VectorXd v1 = Eigen::Vector2d(0, 1);
  Eigen::Matrix2d e3, e5;
  e3 << -0.75, 0, 0, 0.75;
  e5 << -3.0 / 16, 0, 0, 15.0 / 16;
  CHECK((contract_mat(mb(3), v1) - e3).norm() < 1e-15);
  CHECK((contract_mat(mb(5), v1) - e5).norm() < 1e-15);
  const SymTensor t2 = mb(2);
  const Eigen::MatrixXd vvt = t2.factors() * t2.lambdas().asDiagonal() * t2.factors().transpose();
  CHECK((contract_mat(t2, Eigen::Vector2d(0.3, -0.1)) - vvt).norm() < 1e-15);
}

TEST_CASE("to_dense examples") {
  const DenseTensor d3 = to_dense(mb(3));
  CHECK(std::abs(d3.at({1, 1, 1}) - 0.75) < 1e-15);
  const Eigen::VectorXd v1 = Eigen::Vector2d(0, 1);
  CHECK((contract_vec(d3, v1) - contract_vec(mb(3), v1)).norm() <= 1e-14);

  const SymTensor e1 = make_sym_tensor(Eigen::Vector3d(1, 0, 0), Eigen::VectorXd::Ones(1), 3);
  const DenseTensor de = to_dense(e1);
  for (std::size_t f = 0; f < de.size(); ++f) CHECK(de[f] == (f == 0 ? 1.0 : 0.0));
  CHECK(d3.is_symmetric(1e-12, 200, 1));

  const SymTensor big = make_sym_tensor(Eigen::VectorXd::Ones(10), Eigen::VectorXd::Ones(1), 8);
  CHECK(test::kind_of([&] { to_dense(big); }) == ErrorKind::CapExceeded);
}

TEST_CASE("decomposition contractions agree with the dense oracle") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const SymTensor t = test::random_tensor(gen, 4, 5, 6);
    const DenseTensor dense = to_dense(t);
    CHECK(dense.is_symmetric(1e-12 * std::max(1.0, dense.frobenius_norm()), 100, trial));
    CHECK(std::abs(dense.frobenius_norm() - t.frobenius_norm()) <= 1e-11 * std::max(1.0, dense.frobenius_norm()));
    const Eigen::VectorXd x = test::random_matrix(gen, t.dim(), 1);
    const Eigen::VectorXd a = contract_vec(t, x), b = dense.contract_vec(x);
    CHECK((a - b).norm() <= 1e-11 * std::max(1.0, b.norm()));
    const Eigen::MatrixXd am = contract_mat(t, x), bm = dense.contract_mat(x);
    CHECK((am - bm).norm() <= 1e-11 * std::max(1.0, bm.norm()));
    CHECK((am - am.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, am.norm()));
    CHECK((am * x - a).norm() <= 1e-12 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("homogeneity of contract_vec") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const SymTensor t = test::random_tensor(gen, 4, 6, 5);
    const Eigen::VectorXd x = test::random_matrix(gen, t.dim(), 1);
    for (double c : {-1.0, 0.5, 3.0}) {
      const Eigen::VectorXd lhs = contract_vec(t, Eigen::VectorXd(c * x));
      const Eigen::VectorXd rhs = ipow(c, t.order() - 1) * contract_vec(t, x);
      CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
    }
  }
}

TEST_CASE("eigen_residual examples and Rayleigh consistency") {
  const auto r4 = eigen_residual(mb(4), Eigen::Vector2d(1, 0));
  CHECK(std::abs(r4.mu - 9.0 / 8.0) < 1e-14);
  CHECK(r4.residual <= 1e-14);
  CHECK(eigen_residual(mb(5), Eigen::Vector2d(1, 0)).residual > 0.1);
  CHECK(eigen_residual(mb(3), Eigen::Vector2d(0, 1)).residual == 0.0);

  for (int d = 3; d <= 10; ++d) {
    const SymTensor t = mb(d);
    for (Eigen::Index j = 0; j < 3; ++j) {
      const Eigen::VectorXd v = t.factors().col(j);
      const auto er = eigen_residual(t, v);
      if (er.residual <= 1e-12) CHECK(std::abs(contract_vec(t, v).norm() - std::abs(er.mu)) <= 1e-10);
    }
  }
}

TEST_CASE("tensor JSON round trip is bit-exact") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const SymTensor t = test::random_tensor(gen, 4, 6, 6);
    const SymTensor back = tensor_from_json(tensor_to_json(t));
    REQUIRE(back.rank() == t.rank());
    CHECK(back.order() == t.order());
    CHECK(std::memcmp(back.factors().data(), t.factors().data(), sizeof(double) * t.factors().size()) == 0);
    CHECK(std::memcmp(back.lambdas().data(), t.lambdas().data(), sizeof(double) * t.lambdas().size()) == 0);
  }
  CHECK(test::kind_of([] { tensor_from_json("{\"d\": 3}"); }) == ErrorKind::InvalidArgs);
  CHECK(test::kind_of([] { tensor_from_json("not json"); }) == ErrorKind::InvalidArgs);
  CHECK(test::kind_of([] { tensor_from_json(R"({"n":3,"r":1,"d":3,"lambdas":[1],"V":[[1,0]]})"); }) ==
        ErrorKind::DimensionMismatch);
}
