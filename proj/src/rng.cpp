#include "tpm/rng.hpp"

#include <cmath>
#include <numbers>

#include "tpm/error.hpp"

namespace tpm {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(master);
  for (auto k : keys) h = mix64(h ^ mix64(k));
  return h;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open0();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd sample_sphere(Rng& rng, Eigen::Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgs, "sample_sphere needs n >= 1");
  Eigen::VectorXd x(n);
  double norm = 0.0;
  while (!(norm > 0.0)) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.normal();
    norm = x.norm();
  }
  return x / norm;
}

}  // namespace tpm
