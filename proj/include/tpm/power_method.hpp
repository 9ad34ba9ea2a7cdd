#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tpm/error.hpp"
#include "tpm/frames.hpp"
#include "tpm/tensor.hpp"

namespace tpm {

/// Images with norm below this are treated as the base locus of the map.
inline constexpr double kZeroImageNorm = 1e-300;

/// One normalized power step x -> T.x^{d-1} / ||T.x^{d-1}||.
template <typename Tensor>
Eigen::VectorXd step(const Tensor& t, const Eigen::VectorXd& x) {
  Eigen::VectorXd image = contract_vec(t, x);
  const double norm = image.norm();
  if (!(norm >= kZeroImageNorm)) throw Error(ErrorKind::ZeroImage, "T.x^{d-1} vanishes");
  return image / norm;
}

enum class LimitKind { FrameVector, Other, None };

struct LimitClass {
  LimitKind kind = LimitKind::None;
  Eigen::Index index = -1;  // zero-based frame column for FrameVector
  int sign = 0;             // +1 or -1 for FrameVector

  bool is_frame_vector() const { return kind == LimitKind::FrameVector; }
  /// "+v1", "-v3", "other", "none" (one-based indices).
  std::string to_string() const;
};

/// Frame column j with min(||x - v_j||, ||x + v_j||) <= radius, provided exactly one matches.
LimitClass classify_limit(const Eigen::VectorXd& x, const Eigen::MatrixXd& frame_vectors, double radius);

struct RunOptions {
  int max_iter = 100;
  double tol = 1e-10;
  bool record_trajectory = false;
};

struct PowerRunResult {
  Eigen::VectorXd final_x;
  int iterations = 0;
  bool converged = false;
  double last_displacement = 0.0;
  LimitClass limit;
  /// x_0, x_1, ... (normalized) with the sign-aligned displacement that led to each.
  std::vector<Eigen::VectorXd> trajectory;
  std::vector<double> displacements;
};

/// Sign-aligned displacement min(||y - x||, ||y + x||).
inline double aligned_displacement(const Eigen::VectorXd& y, const Eigen::VectorXd& x) {
  return std::min((y - x).norm(), (y + x).norm());
}

template <typename Tensor>
PowerRunResult run(const Tensor& t, const Eigen::VectorXd& x0, const RunOptions& opts = {},
                   const Frame* frame = nullptr) {
  if (opts.max_iter < 1) throw Error(ErrorKind::InvalidArgs, "max_iter must be >= 1");
  const double norm0 = x0.norm();
  if (!(norm0 > 0.0)) throw Error(ErrorKind::InvalidArgs, "initial vector is zero");

  PowerRunResult out;
  Eigen::VectorXd x = x0 / norm0;
  if (opts.record_trajectory) {
    out.trajectory.push_back(x);
    out.displacements.push_back(0.0);
  }
  for (int k = 1; k <= opts.max_iter; ++k) {
    Eigen::VectorXd y = step(t, x);
    out.last_displacement = aligned_displacement(y, x);
    x = std::move(y);
    out.iterations = k;
    if (opts.record_trajectory) {
      out.trajectory.push_back(x);
      out.displacements.push_back(out.last_displacement);
    }
    if (out.last_displacement <= opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.final_x = x;
  if (out.converged) {
    out.limit.kind = LimitKind::Other;
    if (frame != nullptr) {
      const LimitClass match = classify_limit(x, frame->vectors, 10.0 * opts.tol);
      if (match.is_frame_vector()) out.limit = match;
    }
  }
  return out;
}

}  // namespace tpm
