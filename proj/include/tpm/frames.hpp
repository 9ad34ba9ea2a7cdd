#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tpm/tensor.hpp"

namespace tpm {

inline constexpr double kFrameTol = 1e-10;

/// Equiangular set of unit columns. sigma(i, j) * alpha == <v_i, v_j> for i != j.
struct Frame {
  Eigen::MatrixXd vectors;
  double alpha = 0.0;
  Eigen::MatrixXi sigma;
  bool is_etf = false;

  Eigen::Index dim() const { return vectors.rows(); }
  Eigen::Index size() const { return vectors.cols(); }
  /// ||V V^T - (r/n) I||_F
  double tightness_residual() const;
};

/// sqrt((r - n) / (n (r - 1))); 0 when r == n. Throws InvalidArgs if r < n or n < 1.
double welch_bound(int n, int r);

/// Throws NotUnitNorm or NotEquiangular (naming the worst pair and the spread).
Frame validate_frame(const Eigen::MatrixXd& v, double tol = kFrameTol);

/// n + 1 vertices of a regular simplex in R^n: sqrt(1 + 1/n) e_i - (sqrt(n+1) - 1) / n^{3/2} 1
/// for i <= n, and -1/sqrt(n) 1 last.
Frame regular_simplex(int n);

Frame mercedes_benz();
Frame cube_diagonals();
Frame icosahedron();
Frame lines16_r6();
/// Six equiangular lines in R^4 (alpha = 1/3) that are not tight.
Frame es_r4_6lines();

struct CatalogEntry {
  std::string name;
  std::string description;
  Frame frame;
};

/// mb, simplex3, cube, icosahedron, lines16, es6.
std::vector<CatalogEntry> frame_catalog();

/// Catalog lookup; also accepts "simplexN" for any N >= 2. Throws InvalidArgs.
Frame frame_by_name(const std::string& name);

/// Orthonormal kernel basis of V as the columns of the result.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& v, double tol = kFrameTol);

struct KernelCondition {
  bool holds = false;
  std::optional<double> mu;
  double residual = 0.0;
};

/// Least-squares test for a mu_j with
/// (l_1 s_{1j}^{d-1}, ..., mu_j, ..., l_r s_{rj}^{d-1}) in Ker(V).
/// j is zero-based.
KernelCondition kernel_condition_holds(const Frame& f, const Eigen::VectorXd& lambdas, int d, Eigen::Index j,
                                       double tol = kFrameTol);

/// sum_i lambda_i v_i^{(x)d} over the frame columns; all-ones when lambdas is empty.
SymTensor frame_tensor(const Frame& f, int d, const Eigen::VectorXd& lambdas = {});

}  // namespace tpm
