#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>

#include "tpm/frames.hpp"
#include "tpm/tensor.hpp"

namespace tpm {

/// rho within this distance of 1 is left uncertified.
inline constexpr double kVerdictMargin = 1e-9;
/// Eigen-residual threshold accepted by jacobian_at and certify.
inline constexpr double kCertifyResidualTol = 1e-8;

enum class Verdict { Robust, NotCertified, CertifiedNonAttracting };

std::string to_string(Verdict v);

/// Jacobian of the normalized power map at an eigenvector v with eigenvalue mu:
/// ((d-1)/mu) (T.v^{d-2} - mu v v^T).
/// Throws NotAnEigenvector (residual > 1e-8) or ZeroEigenvalue (|mu| <= 1e-12).
Eigen::MatrixXd jacobian_at(const SymTensor& t, const Eigen::VectorXd& v, double mu);

/// The two links of the spectral bound for generator v_j:
/// tight  = |(d-1)/mu| || sum_{i != j} l_i a_ij^{d-2} v_i v_i^T ||_2
/// coarse = |(d-1)/mu| (r-1) max|l_i| max|a_ij|^{d-2}
struct GeneralBound {
  double tight = 0.0;
  double coarse = 0.0;
};

GeneralBound bound_general(const SymTensor& t, Eigen::Index j, double mu);

/// ||V V^T||_2 a^{d-2} (d-1) / (min|l_i| (1 - a^{d-1})) for an equiangular
/// generating set with coefficients in Ker(V) and odd d. For orthogonal
/// generators (a = 0) the bound is 0 without the kernel requirement.
/// Throws PreconditionFailed otherwise.
double bound_kernel_case(const SymTensor& t);

struct AllOnesBound {
  double bound = 0.0;
  double eigenvalue = 0.0;  // 1 + a^{d-2} (r/n - 1)
};

/// (r/n) a^{d-2} (d-1) / (1 + a^{d-2} (r/n - 1)) for the all-ones tensor of an ETF.
/// Throws NotETF or OddOrder.
AllOnesBound bound_allones_etf(const Frame& f, int d);

using Int128 = __int128;

/// n^{d-1} + n - d - d n in exact 128-bit arithmetic. Throws InvalidArgs on
/// n < 2, d < 2 or overflow.
Int128 gamma(int n, int d);
std::string to_string_i128(Int128 v);

struct RobustnessCertificate {
  std::optional<Eigen::Index> vector_index;  // zero-based column of the context frame (or tensor)
  int vector_sign = 0;
  Eigen::VectorXd vector;
  double mu = 0.0;
  double residual = 0.0;
  double rho_numeric = 0.0;
  std::optional<GeneralBound> bound_general;
  std::optional<double> bound_kernel;
  std::optional<AllOnesBound> bound_allones;
  Verdict verdict = Verdict::NotCertified;
};

/// Numeric spectral radius of the Jacobian plus every analytic bound whose
/// hypotheses hold. Without an explicit context the tensor's own generators
/// are tried as a frame.
RobustnessCertificate certify(const SymTensor& t, const Eigen::VectorXd& v, const Frame* context = nullptr);

}  // namespace tpm
