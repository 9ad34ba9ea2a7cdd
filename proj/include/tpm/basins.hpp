#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tpm/frames.hpp"
#include "tpm/power_method.hpp"
#include "tpm/tensor.hpp"

namespace tpm {

/// One step of the coordinate recursion for the all-ones Mercedes-Benz tensor
/// (even d):
///   a' = (a^{d-1} - (1-a)^{d-1}/2 + 1/2) / (1 + a^{d-1}/2 + (1-a)^{d-1}/2).
/// Throws InvalidArgs for d < 3.
double alpha_step(double alpha, int d);

/// alpha_1, ..., alpha_k. Throws InvalidArgs unless 0 < alpha0 < 1.
std::vector<double> alpha_orbit(double alpha0, int d, int k);

/// Per-pixel labels: frame column (zero-based) or one of these.
inline constexpr int kLabelOther = -1;
inline constexpr int kLabelNone = -2;
inline constexpr int kLabelOutside = -3;

struct BasinGrid {
  int resolution = 0;
  int d = 0;
  int max_iter = 0;
  double tol = 0.0;
  std::vector<int> labels;      // row-major from the top-left
  std::vector<int> iterations;  // 0 outside the disk

  int label(int row, int col) const { return labels[static_cast<std::size_t>(row) * resolution + col]; }
  /// Pixel centre in the square [-1, 1]^2, y pointing up.
  static Eigen::Vector2d pixel_center(int row, int col, int resolution);
};

/// Runs the power method from each pixel centre inside the closed unit disk,
/// in parallel. Throws InvalidArgs unless n == 2 and resolution >= 16.
BasinGrid render_basins(const SymTensor& t, const Frame& f, int resolution, int max_iter = 200,
                        double tol = 1e-10);

struct BasinStats {
  std::size_t disk_pixels = 0;
  std::size_t labeled = 0;  // classified to a frame column
  std::size_t other = 0;
  std::size_t none = 0;
  double mean_iterations = 0.0;
  int max_iterations = 0;
};

BasinStats basin_stats(const BasinGrid& g);

using Rgb = std::array<std::uint8_t, 3>;

/// Frame columns 1, 2, 3 are blue, red, green; further columns cycle a fixed
/// palette. "other" is grey, "none" black, outside the disk white.
Rgb label_color(int label);

/// Binary P6, 8-bit RGB.
std::string to_ppm(const BasinGrid& g);

/// {resolution, d, max_iter, tol, colors, iterations: {mean, max}, counts}.
std::string basin_sidecar_json(const BasinGrid& g);

struct SectorReport {
  int samples = 0;
  int skipped = 0;
  int passed = 0;
  int failed = 0;
};

/// Samples x0 uniformly on the circle, skips starts within 1e-6 rad of a tie
/// between the two best signed frame vectors, and checks that the power method
/// converges to the signed frame vector maximizing <v, x0>.
/// Throws PreconditionFailed unless n == 2 and d is even and >= 6.
SectorReport sector_check(const SymTensor& t, const Frame& f, int samples, std::uint64_t seed,
                          int max_iter = 200, double tol = 1e-10);

}  // namespace tpm
