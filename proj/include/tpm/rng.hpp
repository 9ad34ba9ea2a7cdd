#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include <Eigen/Core>

namespace tpm {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stream seed for (master, a, b, c, ...): folds each key through mix64.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// std::mt19937_64 (state transition fixed by the C++ standard), with doubles
/// built from the top 53 bits so streams are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in (0, 1].
  double uniform_open0() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
  /// Standard normal, Box-Muller (both variates used).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Gaussian vector normalized to unit length (redrawn in the measure-zero case of 0).
Eigen::VectorXd sample_sphere(Rng& rng, Eigen::Index n);

}  // namespace tpm
