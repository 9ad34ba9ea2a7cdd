#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tpm/frames.hpp"
#include "tpm/io.hpp"
#include "tpm/linalg.hpp"

using namespace tpm;

namespace {

std::vector<Frame> named_frames() {
  return {mercedes_benz(), cube_diagonals(), icosahedron(), lines16_r6(), es_r4_6lines()};
}

}  // namespace

TEST_CASE("welch_bound examples") {
  CHECK(welch_bound(2, 3) == doctest::Approx(0.5));
  CHECK(welch_bound(4, 4) == 0.0);
  CHECK(std::abs(welch_bound(3, 6) - 1.0 / std::sqrt(5.0)) < 1e-15);
  CHECK(test::kind_of([] { welch_bound(3, 2); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("validate_frame examples") {
  const Frame s = regular_simplex(2);
  CHECK(std::abs(s.alpha - 0.5) < 1e-12);
  CHECK(s.is_etf);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(s.sigma(i, j) == (i == j ? 1 : -1));

  const Frame ico = icosahedron();
  CHECK(std::abs(ico.alpha - 1.0 / std::sqrt(5.0)) < 1e-12);
  CHECK(ico.is_etf);
  const Eigen::MatrixXd g = ico.vectors.transpose() * ico.vectors;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(std::abs(std::abs(g(i, j)) - (i == j ? 1.0 : ico.alpha)) < 1e-12);

  const Frame es = es_r4_6lines();
  CHECK(std::abs(es.alpha - 1.0 / 3.0) < 1e-12);
  CHECK_FALSE(es.is_etf);
}

TEST_CASE("validate_frame errors") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, 2;
  CHECK(test::kind_of([&] { validate_frame(bad); }) == ErrorKind::NotUnitNorm);
  Eigen::MatrixXd skew(2, 3);
  skew << 1, 0, std::sqrt(0.5), 0, 1, std::sqrt(0.5);
  CHECK(test::kind_of([&] { validate_frame(skew); }) == ErrorKind::NotEquiangular);
  try {
    validate_frame(skew);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("spread") != std::string::npos);
  }
}

TEST_CASE("regular_simplex") {
  const Frame s2 = regular_simplex(2);
  CHECK((s2.vectors * s2.vectors.transpose() - 1.5 * Eigen::Matrix2d::Identity()).norm() < 1e-12);
  const Eigen::MatrixXd g = s2.vectors.transpose() * s2.vectors;
  CHECK(std::abs(g(0, 1) + 0.5) < 1e-12);
  CHECK(std::abs(g(1, 2) + 0.5) < 1e-12);
  const Frame s3 = regular_simplex(3);
  CHECK(s3.size() == 4);
  CHECK(std::abs(s3.alpha - 1.0 / 3.0) < 1e-12);
  for (int n = 2; n <= 10; ++n) {
    const Frame s = regular_simplex(n);
    CHECK(s.is_etf);
    CHECK(std::abs(s.alpha - 1.0 / n) < 1e-12);
    CHECK((s.vectors * Eigen::VectorXd::Ones(n + 1)).norm() <= 1e-12);
  }
  CHECK(test::kind_of([] { regular_simplex(1); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("catalog constructors") {
  const Frame mb = mercedes_benz();
  CHECK(std::abs(mb.vectors(0, 1) - std::sqrt(3.0) / 2) < 1e-15);
  CHECK(mb.vectors(1, 1) == -0.5);
  const Frame cube = cube_diagonals();
  CHECK(cube.dim() == 3);
  CHECK(cube.size() == 4);
  CHECK(std::abs(cube.alpha - 1.0 / 3.0) < 1e-12);
  const Frame l16 = lines16_r6();
  CHECK(l16.size() == 16);
  CHECK(std::abs(l16.alpha - welch_bound(6, 16)) < 1e-12);
  const std::vector<bool> etf{true, true, true, true, false};
  const auto frames = named_frames();
  for (std::size_t i = 0; i < frames.size(); ++i) CHECK(frames[i].is_etf == etf[i]);
  CHECK(frame_catalog().size() == 6);
  CHECK(frame_by_name("simplex5").size() == 6);
  CHECK(test::kind_of([] { frame_by_name("nope"); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("kernel_basis") {
  const Eigen::MatrixXd k = kernel_basis(regular_simplex(3).vectors);
  REQUIRE(k.cols() == 1);
  CHECK((k.col(0).cwiseAbs() - Eigen::Vector4d::Constant(0.5)).norm() < 1e-12);
  CHECK(kernel_basis(Eigen::MatrixXd::Identity(4, 4)).cols() == 0);
  CHECK(kernel_basis(es_r4_6lines().vectors).cols() == 2);
}

TEST_CASE("kernel_condition_holds examples") {
  const auto s = kernel_condition_holds(regular_simplex(2), Eigen::Vector3d::Ones(), 3, 0);
  CHECK(s.holds);
  REQUIRE(s.mu.has_value());
  CHECK(std::abs(*s.mu - 1.0) < 1e-12);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(6);
  CHECK(kernel_condition_holds(icosahedron(), ones, 5, 0).holds);
  CHECK_FALSE(kernel_condition_holds(icosahedron(), ones, 5, 1).holds);
}

TEST_CASE("Welch inequality, Gram rank and the ETF constant") {
  std::vector<Frame> frames = named_frames();
  for (int n = 2; n <= 6; ++n) frames.push_back(regular_simplex(n));
  for (const auto& f : frames) {
    const double w = welch_bound(static_cast<int>(f.dim()), static_cast<int>(f.size()));
    CHECK(f.alpha >= w - 1e-12);
    CHECK((std::abs(f.alpha - w) <= 1e-12) == f.is_etf);
    if (!f.is_etf) continue;
    const Eigen::MatrixXd gram = f.vectors.transpose() * f.vectors;
    const auto e = sym_eigen(gram);
    CHECK((e.values.array().abs() > 1e-8).count() == f.dim());
    if (f.alpha == 0.0) continue;
    const double c = (1.0 / f.alpha) * (static_cast<double>(f.size()) / f.dim() - 1.0);
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(f.dim());
      for (Eigen::Index i = 0; i < f.size(); ++i)
        if (i != j) sum += f.sigma(i, j) * f.vectors.col(i);
      CHECK((sum - c * f.vectors.col(j)).norm() <= 1e-10);
    }
  }
}

TEST_CASE("sigma is symmetric and reproduces the Gram matrix") {
  for (const auto& f : named_frames()) {
    const Eigen::MatrixXd gram = f.vectors.transpose() * f.vectors;
    CHECK((f.sigma - f.sigma.transpose()).cwiseAbs().maxCoeff() == 0);
    for (Eigen::Index i = 0; i < f.size(); ++i)
      for (Eigen::Index j = 0; j < f.size(); ++j)
        if (i != j) CHECK(std::abs(f.sigma(i, j) * f.alpha - gram(i, j)) < 1e-10);
  }
}

TEST_CASE("odeco frame gets all-plus signs") {
  const Frame f = validate_frame(Eigen::MatrixXd::Identity(3, 3));
  CHECK(f.alpha == 0.0);
  CHECK(f.sigma.minCoeff() == 1);
  CHECK(f.is_etf);
}

TEST_CASE("frame JSON round trip") {
  const Frame f = icosahedron();
  const Frame back = frame_from_json(frame_to_json(f));
  CHECK((back.vectors - f.vectors).norm() == 0.0);
  CHECK(back.is_etf);
}
