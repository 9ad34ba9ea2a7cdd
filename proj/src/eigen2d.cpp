#include "tpm/eigen2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "tpm/error.hpp"

namespace tpm {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Complex snap(Complex z) {
  constexpr double kSnap = 1e-13;
  return {std::abs(z.real()) <= kSnap ? 0.0 : z.real(), std::abs(z.imag()) <= kSnap ? 0.0 : z.imag()};
}

Eigen::Index dominant_coordinate(const Eigen::Vector2cd& x) {
  return std::abs(x(0)) >= std::abs(x(1)) * (1.0 - 1e-12) ? 0 : 1;
}

void fill_eigenvalue(const SymTensor& t, EigenPair& p) {
  const Eigen::Vector2cd image = contract_vec(t, p.vector);
  const Eigen::Index k = dominant_coordinate(p.vector);
  p.eigenvalue = image(k) / p.vector(k);
  p.residual = (image - p.eigenvalue * p.vector).norm();
}

}  // namespace

std::string to_string(Normalization n) { return n == Normalization::Isotropic ? "isotropic" : "bilinear"; }

bool EigenPair::is_real(double tol) const {
  return std::abs(vector(0).imag()) <= tol && std::abs(vector(1).imag()) <= tol &&
         std::abs(eigenvalue.imag()) <= tol * (1.0 + std::abs(eigenvalue));
}

EigenForm eigen_form(const SymTensor& t) {
  if (t.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "eigen_form needs a 2-dimensional tensor");
  const int d = t.order();
  std::vector<double> c(static_cast<std::size_t>(d + 1), 0.0);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < t.rank(); ++i) {
    const double a = t.factors()(0, i);
    const double b = t.factors()(1, i);
    const double lambda = t.lambdas()(i);
    scale += std::abs(lambda);
    // lambda (a u + b v)^{d-1} (a v - b u)
    for (int k = 0; k <= d - 1; ++k) {
      const double w = lambda * binomial(d - 1, k) * ipow(a, k) * ipow(b, d - 1 - k);
      c[static_cast<std::size_t>(k)] += w * a;
      c[static_cast<std::size_t>(k + 1)] -= w * b;
    }
  }

  double largest = 0.0;
  for (double x : c) largest = std::max(largest, std::abs(x));
  if (largest <= 1e-12 * scale)
    throw Error(ErrorKind::DegenerateForm, "eigen form vanishes identically; every direction is an eigenvector");

  EigenForm form;
  form.coeffs = c;
  int top = d;
  while (top >= 0 && std::abs(c[static_cast<std::size_t>(top)]) <= 1e-12 * largest) --top;
  form.infinity_multiplicity = d - top;
  std::vector<Complex> affine;
  for (int k = 0; k <= top; ++k) affine.emplace_back(c[static_cast<std::size_t>(k)], 0.0);
  form.affine = PolyC(std::move(affine));
  return form;
}

std::vector<EigenPair> all_eigenpairs_2d(const SymTensor& t, double tol) {
  const EigenForm form = eigen_form(t);
  const int d = t.order();

  std::vector<std::pair<Eigen::Vector2cd, int>> directions;
  if (form.affine.degree() >= 1) {
    std::vector<PolyRoot> roots;
    for (std::uint64_t seed = 0;; ++seed) {
      try {
        roots = poly_roots(form.affine, tol, seed);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoConvergence || seed >= 4) throw;
      }
    }
    for (const auto& r : roots) directions.emplace_back(Eigen::Vector2cd(r.value, Complex{1.0, 0.0}), r.multiplicity);
  }
  if (form.infinity_multiplicity > 0)
    directions.emplace_back(Eigen::Vector2cd(Complex{1.0, 0.0}, Complex{0.0, 0.0}), form.infinity_multiplicity);

  std::vector<EigenPair> pairs;
  int total = 0;
  for (auto& [x, multiplicity] : directions) {
    EigenPair p;
    p.multiplicity = multiplicity;
    total += multiplicity;
    const Complex bilinear = x(0) * x(0) + x(1) * x(1);
    const double hermitian = x.squaredNorm();
    if (std::abs(bilinear) <= tol * hermitian) {
      p.normalization = Normalization::Isotropic;
      x /= std::sqrt(hermitian);
      x *= std::conj(x(1)) / std::abs(x(1));
      p.vector = x;
      fill_eigenvalue(t, p);
    } else {
      p.normalization = Normalization::Bilinear;
      p.vector = x / std::sqrt(bilinear);
      fill_eigenvalue(t, p);
      bool flip = false;
      if (d % 2 == 1 && std::abs(p.eigenvalue.real()) > tol * (1.0 + std::abs(p.eigenvalue))) {
        flip = p.eigenvalue.real() < 0.0;
      } else {
        const double angle = std::arg(p.vector(dominant_coordinate(p.vector)));
        flip = !(angle > -std::numbers::pi / 2 && angle <= std::numbers::pi / 2);
      }
      if (flip) {
        p.vector = -p.vector;
        fill_eigenvalue(t, p);
      }
    }
    p.vector(0) = snap(p.vector(0));
    p.vector(1) = snap(p.vector(1));
    p.eigenvalue = snap(p.eigenvalue);
    pairs.push_back(p);
  }

  if (total != d)
    throw Error(ErrorKind::NoConvergence, "multiplicities sum to " + std::to_string(total) + ", expected " +
                                              std::to_string(d));

  auto key = [](const EigenPair& p) {
    return std::make_tuple(!p.is_real(), p.vector(0).real(), p.vector(0).imag(), p.vector(1).real(),
                           p.vector(1).imag());
  };
  std::sort(pairs.begin(), pairs.end(), [&](const EigenPair& a, const EigenPair& b) { return key(a) < key(b); });
  return pairs;
}

EigenPair rescale(const EigenPair& p, Complex c, int order) {
  EigenPair out = p;
  out.vector = p.vector * c;
  out.eigenvalue = snap(p.eigenvalue * ipow(c, order - 2));
  out.residual = p.residual * std::pow(std::abs(c), order - 1);
  out.vector(0) = snap(out.vector(0));
  out.vector(1) = snap(out.vector(1));
  return out;
}

EigenPair hermitian_representative(const EigenPair& p, int order) {
  const double norm = p.vector.norm();
  const Eigen::Index k = std::abs(p.vector(1)) > 1e-14 * norm ? 1 : 0;
  const Complex phase = p.vector(k) / std::abs(p.vector(k));
  return rescale(p, std::conj(phase) / norm, order);
}

std::int64_t cs_count(int n, int d) {
  if (n < 1 || d < 3) throw Error(ErrorKind::InvalidArgs, "cs_count needs n >= 1 and d >= 3");
  __int128 power = 1;
  for (int k = 0; k < n; ++k) {
    power *= (d - 1);
    if (power > std::numeric_limits<std::int64_t>::max())
      throw Error(ErrorKind::InvalidArgs, "cs_count overflows 64-bit range");
  }
  return static_cast<std::int64_t>((power - 1) / (d - 2));
}

}  // namespace tpm
