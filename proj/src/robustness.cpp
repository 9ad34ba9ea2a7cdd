#include "tpm/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpm/linalg.hpp"
#include "tpm/power_method.hpp"

namespace tpm {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Robust: return "Robust";
    case Verdict::NotCertified: return "NotCertified";
    case Verdict::CertifiedNonAttracting: return "CertifiedNonAttracting";
  }
  return "NotCertified";
}

Eigen::MatrixXd jacobian_at(const SymTensor& t, const Eigen::VectorXd& v, double mu) {
  if (std::abs(mu) <= 1e-12) throw Error(ErrorKind::ZeroEigenvalue, "eigenvalue is zero");
  const auto er = eigen_residual(t, v);
  if (er.residual > kCertifyResidualTol)
    throw Error(ErrorKind::NotAnEigenvector, "eigen residual " + std::to_string(er.residual) + " exceeds 1e-8");
  const Eigen::MatrixXd j =
      (t.order() - 1) / mu * (contract_mat(t, v) - mu * v * v.transpose());
  return 0.5 * (j + j.transpose());
}

GeneralBound bound_general(const SymTensor& t, Eigen::Index j, double mu) {
  if (std::abs(mu) <= 1e-12) throw Error(ErrorKind::ZeroEigenvalue, "eigenvalue is zero");
  if (j < 0 || j >= t.rank()) throw Error(ErrorKind::InvalidArgs, "generator index out of range");
  const int d = t.order();
  const auto& v = t.factors();
  const double factor = std::abs((d - 1) / mu);

  Eigen::MatrixXd rest = Eigen::MatrixXd::Zero(t.dim(), t.dim());
  double max_lambda = 0.0, max_alpha = 0.0;
  for (Eigen::Index i = 0; i < t.rank(); ++i) {
    if (i == j) continue;
    const double a = v.col(i).dot(v.col(j));
    rest += t.lambdas()(i) * ipow(a, d - 2) * v.col(i) * v.col(i).transpose();
    max_lambda = std::max(max_lambda, std::abs(t.lambdas()(i)));
    max_alpha = std::max(max_alpha, std::abs(a));
  }
  GeneralBound out;
  out.tight = factor * spectral_radius_sym(0.5 * (rest + rest.transpose()));
  out.coarse = factor * static_cast<double>(t.rank() - 1) * max_lambda * ipow(max_alpha, d - 2);
  return out;
}

double bound_kernel_case(const SymTensor& t) {
  Frame f;
  try {
    f = validate_frame(t.factors());
  } catch (const Error& e) {
    throw Error(ErrorKind::PreconditionFailed, std::string("generators are not equiangular (") + e.what() + ")");
  }
  if (f.alpha <= kFrameTol) return 0.0;
  const int d = t.order();
  if (d % 2 == 0) throw Error(ErrorKind::PreconditionFailed, "kernel bound needs odd order");
  const Eigen::VectorXd& lambdas = t.lambdas();
  if ((f.vectors * lambdas).norm() > kFrameTol * std::max(1.0, lambdas.norm()))
    throw Error(ErrorKind::PreconditionFailed, "coefficients are not in Ker(V)");
  const double vvt = spectral_norm(f.vectors * f.vectors.transpose());
  return vvt * ipow(f.alpha, d - 2) * (d - 1) / (lambdas.cwiseAbs().minCoeff() * (1.0 - ipow(f.alpha, d - 1)));
}

AllOnesBound bound_allones_etf(const Frame& f, int d) {
  if (!f.is_etf) throw Error(ErrorKind::NotETF, "frame is not an equiangular tight frame");
  if (d % 2 != 0) throw Error(ErrorKind::OddOrder, "all-ones bound needs even order");
  const double ratio = static_cast<double>(f.size()) / static_cast<double>(f.dim());
  const double a = ipow(f.alpha, d - 2);
  AllOnesBound out;
  out.eigenvalue = 1.0 + a * (ratio - 1.0);
  out.bound = ratio * a * (d - 1) / out.eigenvalue;
  return out;
}

Int128 gamma(int n, int d) {
  if (n < 2 || d < 2) throw Error(ErrorKind::InvalidArgs, "gamma needs n >= 2 and d >= 2");
  constexpr Int128 kLimit = (static_cast<Int128>(1) << 120);
  Int128 power = 1;
  for (int k = 0; k < d - 1; ++k) {
    if (power > kLimit / n) throw Error(ErrorKind::InvalidArgs, "gamma overflows 128-bit range");
    power *= n;
  }
  return power + n - d - static_cast<Int128>(d) * n;
}

std::string to_string_i128(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string digits;
  while (v != 0) {
    const int digit = static_cast<int>(v % 10);
    digits.push_back(static_cast<char>('0' + (negative ? -digit : digit)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

namespace {

bool is_all_ones_on(const SymTensor& t, const Frame& f) {
  if (t.rank() != f.size() || t.dim() != f.dim()) return false;
  for (Eigen::Index i = 0; i < t.rank(); ++i) {
    if (std::abs(t.lambdas()(i) - 1.0) > kStructureTol) return false;
    // Even order: a generator equal to -v_j gives the same rank-one term.
    const LimitClass match = classify_limit(t.factors().col(i), f.vectors, 1e-9);
    if (!match.is_frame_vector()) return false;
  }
  return true;
}

}  // namespace

RobustnessCertificate certify(const SymTensor& t, const Eigen::VectorXd& v_in, const Frame* context) {
  if (v_in.size() != t.dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from tensor dimension");
  RobustnessCertificate cert;
  cert.vector = v_in / v_in.norm();
  const auto er = eigen_residual(t, cert.vector);
  cert.mu = er.mu;
  cert.residual = er.residual;
  if (er.residual > kCertifyResidualTol)
    throw Error(ErrorKind::NotAnEigenvector, "eigen residual " + std::to_string(er.residual) + " exceeds 1e-8");
  if (std::abs(er.mu) <= 1e-12) throw Error(ErrorKind::ZeroEigenvalue, "eigenvalue is zero");

  cert.rho_numeric = spectral_radius_sym(jacobian_at(t, cert.vector, cert.mu));
  if (cert.rho_numeric < 1.0 - kVerdictMargin)
    cert.verdict = Verdict::Robust;
  else if (cert.rho_numeric > 1.0 + kVerdictMargin)
    cert.verdict = Verdict::CertifiedNonAttracting;
  else
    cert.verdict = Verdict::NotCertified;

  std::optional<Frame> own;
  if (context == nullptr) {
    try {
      own = validate_frame(t.factors());
      context = &*own;
    } catch (const Error&) {
    }
  }
  if (context != nullptr) {
    const LimitClass match = classify_limit(cert.vector, context->vectors, 1e-8);
    if (match.is_frame_vector()) {
      cert.vector_index = match.index;
      cert.vector_sign = match.sign;
    }
  }

  const LimitClass generator = classify_limit(cert.vector, t.factors(), 1e-8);
  if (generator.is_frame_vector()) {
    const Eigen::VectorXd vj = t.factors().col(generator.index);
    const double mu_j = contract_vec(t, vj).dot(vj);
    if (std::abs(mu_j) > 1e-12) cert.bound_general = bound_general(t, generator.index, mu_j);
    try {
      cert.bound_kernel = bound_kernel_case(t);
    } catch (const Error&) {
    }
    if (context != nullptr && context->is_etf && t.order() % 2 == 0 && is_all_ones_on(t, *context))
      cert.bound_allones = bound_allones_etf(*context, t.order());
  }
  return cert;
}

}  // namespace tpm
