#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace tpm {

using Complex = std::complex<double>;

struct SymEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Cyclic Jacobi eigensolver for small dense symmetric matrices (n <= 64).
/// Sweeps until the off-diagonal Frobenius norm is <= 1e-13 * ||M||_F.
/// Throws NotSymmetric if M deviates from symmetry by more than 1e-10 (relative).
SymEigen sym_eigen(const Eigen::MatrixXd& m);

/// max |eigenvalue| of a symmetric matrix via sym_eigen.
double spectral_radius_sym(const Eigen::MatrixXd& m);

/// Largest singular value of a general dense matrix.
double spectral_norm(const Eigen::MatrixXd& m);

/// Orthonormal basis (as columns) of {x : A x = 0}. Singular values below
/// rel_tol * sigma_max count as zero. A zero matrix has the whole space as kernel.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

/// Complex polynomial, coefficients in ascending degree. Trailing (high-degree)
/// zeros are stripped on construction, so the leading coefficient is nonzero
/// unless the polynomial is identically zero.
class PolyC {
 public:
  PolyC() = default;
  explicit PolyC(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.back(); }
  Complex operator()(Complex z) const;
  /// sum |a_k| |z|^k, the scale used for rounding-level residual tests.
  double abs_eval(double abs_z) const;
  double max_abs_coeff() const;
  PolyC derivative() const;

 private:
  std::vector<Complex> coeffs_;
};

struct PolyRoot {
  Complex value;
  int multiplicity = 1;
};

/// Durand-Kerner (Weierstrass) simultaneous iteration. Roots closer than
/// 1e3 * tol (relative to max(1, |z|)) are merged into one entry with summed
/// multiplicity. Sum of multiplicities equals the degree.
/// Throws NoConvergence after max_sweeps; a different seed perturbs the
/// starting circle and may succeed.
std::vector<PolyRoot> poly_roots(const PolyC& p, double tol = 1e-12, std::uint64_t seed = 0,
                                 int max_sweeps = 1000);

/// Argument-principle count of zeros of p inside |z - center| < radius,
/// sampling p at `samples` points on the circle.
int winding_number(const PolyC& p, Complex center, double radius, int samples = 256);

}  // namespace tpm
