#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tpm/linalg.hpp"
#include "tpm/tensor.hpp"

namespace tpm {

/// Binary form g(u, v) = (T.x^{d-1})_1 v - (T.x^{d-1})_2 u whose projective
/// roots are the eigenvector directions of a 2-dimensional tensor.
struct EigenForm {
  std::vector<double> coeffs;  // coeffs[k] multiplies u^k v^{d-k}
  PolyC affine;                // g(t, 1), t = u / v
  int infinity_multiplicity = 0;  // multiplicity of the direction [1 : 0]
};

/// Throws DimensionMismatch unless n == 2 and DegenerateForm when g vanishes
/// identically (every direction is an eigenvector).
EigenForm eigen_form(const SymTensor& t);

enum class Normalization { Bilinear, Isotropic };

std::string to_string(Normalization n);

struct EigenPair {
  Eigen::Vector2cd vector;
  Complex eigenvalue;
  int multiplicity = 1;
  Normalization normalization = Normalization::Bilinear;
  double residual = 0.0;  // ||T.x^{d-1} - mu x|| for the stored representative

  bool is_real(double tol = 1e-9) const;
};

/// Every complex projective eigenvector with its multiplicity.
///
/// Directions with u^2 + v^2 != 0 are scaled to u^2 + v^2 = 1. For odd d the
/// sign is chosen so that Re(mu) > 0 (mu flips sign with the representative);
/// otherwise the largest-modulus coordinate gets argument in (-pi/2, pi/2].
/// Isotropic directions (u^2 + v^2 = 0) get Hermitian norm 1 with the second
/// coordinate real positive; their eigenvalue depends on that choice.
/// The eigenvalue is read off the larger-modulus coordinate.
std::vector<EigenPair> all_eigenpairs_2d(const SymTensor& t, double tol = 1e-9);

/// Same eigenvector with representative c * x: eigenvalue scales by c^{d-2}.
EigenPair rescale(const EigenPair& p, Complex c, int order);

/// Hermitian-unit representative with the second coordinate real positive
/// (first coordinate when the second vanishes).
EigenPair hermitian_representative(const EigenPair& p, int order);

/// ((d-1)^n - 1) / (d-2), the generic number of eigenvectors counted with multiplicity.
std::int64_t cs_count(int n, int d);

}  // namespace tpm
