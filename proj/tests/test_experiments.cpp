#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "support.hpp"
#include "tpm/experiments.hpp"
#include "tpm/frames.hpp"
#include "tpm/parallel.hpp"
#include "tpm/rng.hpp"

using namespace tpm;

TEST_CASE("Rng streams are reproducible") {
  Rng a(derive_seed(7, {3, 4, 0})), b(derive_seed(7, {3, 4, 0})), c(derive_seed(7, {3, 4, 1}));
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
}

TEST_CASE("uniform and normal moments") {
  Rng r(11);
  double su = 0, sn = 0, sn2 = 0;
  const int count = 200000;
  for (int k = 0; k < count; ++k) {
    const double u = r.uniform();
    CHECK_FALSE((u < 0.0 || u >= 1.0));
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::abs(su / count - 0.5) < 0.005);
  CHECK(std::abs(sn / count) < 0.01);
  CHECK(std::abs(sn2 / count - 1.0) < 0.02);
}

TEST_CASE("sample_sphere is unit and centred") {
  Rng r(5);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
  for (int k = 0; k < 20000; ++k) {
    const Eigen::VectorXd x = sample_sphere(r, 4);
    CHECK(std::abs(x.norm() - 1.0) < 1e-14);
    mean += x;
  }
  CHECK((mean / 20000).norm() < 0.03);
}

TEST_CASE("parallel_for runs each index once and rethrows the lowest failure") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i % 10 == 7) throw Error(ErrorKind::InvalidArgs, std::to_string(i));
    });
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(": 7") != std::string::npos);
  }
}

TEST_CASE("convergence cells") {
  const ConvergenceGrid g = convergence_table(2, 4, 3, 4, 20, 7);
  CHECK(g.cells.size() == 6);
  CHECK(g.at(4, 3).successes == 20);
  CHECK(g.at(4, 3).tick());
  CHECK(g.at(3, 4).tick());
  // Order 4 on the plane is a multiple of |x|^4: every start is already fixed.
  CHECK(g.at(2, 4).other == 20);
  CHECK_FALSE(g.at(2, 4).tick());
  CHECK(test::kind_of([&] { g.at(5, 3); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("convergence csv does not depend on the worker count") {
  const char* saved = std::getenv("TPM_THREADS");
  const std::string keep = saved ? saved : "";
  setenv("TPM_THREADS", "1", 1);
  const std::string one = convergence_csv(convergence_table(2, 5, 3, 6, 8, 42));
  setenv("TPM_THREADS", "4", 1);
  const std::string four = convergence_csv(convergence_table(2, 5, 3, 6, 8, 42));
  if (saved)
    setenv("TPM_THREADS", keep.c_str(), 1);
  else
    unsetenv("TPM_THREADS");
  CHECK(one == four);
  CHECK(one.rfind("n,d,trials,successes,verdict\n", 0) == 0);
}

TEST_CASE("mb_tables totals") {
  const auto tables = mb_tables(3, 10);
  REQUIRE(tables.size() == 8);
  for (const auto& t : tables) {
    if (t.d == 4) {
      CHECK(t.degenerate);
      CHECK(t.pairs.size() == 4);
      for (const auto& p : t.pairs) CHECK(std::abs(p.eigenvalue - 9.0 / 8.0) < 1e-12);
    } else {
      CHECK_FALSE(t.degenerate);
      CHECK(t.multiplicity_total == t.d);
    }
  }
  CHECK(mb_tables_json(tables).find("\"degenerate\"") != std::string::npos);
}

TEST_CASE("format_complex") {
  CHECK(format_complex(0.75) == "0.750000000000000");
  CHECK(format_complex(Complex{0.5, -0.25}) == "0.500000000000000 - 0.250000000000000i");
}

TEST_CASE("perturbation study") {
  const auto zero = perturbation_study(mercedes_benz(), 6, 0.0, 10, 1);
  CHECK(zero.converged == 10);
  CHECK(zero.max_distance <= 1e-9);
  const auto small = perturbation_study(mercedes_benz(), 6, 1e-3, 10, 1);
  CHECK(small.converged == 10);
  CHECK(small.max_distance < 1e-2);
  const auto again = perturbation_study(mercedes_benz(), 6, 1e-3, 10, 1);
  CHECK(perturbation_json(small) == perturbation_json(again));
  CHECK(test::kind_of([] { perturbation_study(mercedes_benz(), 6, 10.0, 5, 1); }) == ErrorKind::InvalidArgs);
}
