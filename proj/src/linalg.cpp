#include "tpm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/SVD>

#include "tpm/error.hpp"

namespace tpm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SymEigen sym_eigen(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "sym_eigen needs a square matrix");
  const Eigen::Index n = m.rows();
  const double fro = m.norm();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, fro))
    throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric within 1e-10");

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  const double target = 1e-13 * fro;

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (std::abs(apr) <= std::numeric_limits<double>::min()) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        // A <- J^T A J with J the (p, r) plane rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  SymEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[i], order[i]);
    out.vectors.col(i) = q.col(order[i]);
  }
  return out;
}

double spectral_radius_sym(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return sym_eigen(m).values.cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index k = a.cols();
  if (a.rows() == 0 || k == 0) return Eigen::MatrixXd::Identity(k, k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = rel_tol * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(k - rank);
}

PolyC::PolyC(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{0.0, 0.0}) coeffs_.pop_back();
}

Complex PolyC::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double PolyC::abs_eval(double abs_z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * abs_z + std::abs(*it);
  return acc;
}

double PolyC::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

PolyC PolyC::derivative() const {
  std::vector<Complex> out;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(static_cast<double>(k) * coeffs_[k]);
  return PolyC(std::move(out));
}

std::vector<PolyRoot> poly_roots(const PolyC& p, double tol, std::uint64_t seed, int max_sweeps) {
  const int deg = p.degree();
  if (deg < 1) throw Error(ErrorKind::InvalidArgs, "poly_roots needs degree >= 1");

  std::vector<Complex> monic(p.coeffs());
  const Complex lead = p.leading();
  for (auto& c : monic) c /= lead;
  const PolyC q(monic);

  std::vector<Complex> z(static_cast<std::size_t>(deg));
  if (deg == 1) {
    z[0] = -monic[0];
  } else {
    // Circle around the root centroid, radius from the Fujiwara bound.
    const Complex centroid = -monic[static_cast<std::size_t>(deg - 1)] / static_cast<double>(deg);
    double radius = 0.0;
    for (int k = 0; k < deg; ++k) {
      const double term =
          std::pow(std::abs(monic[static_cast<std::size_t>(k)]), 1.0 / static_cast<double>(deg - k));
      radius = std::max(radius, term);
    }
    radius = std::max(2.0 * radius, 1e-3);
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    const double offset = 0.4 + jitter(gen);
    for (int k = 0; k < deg; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / deg + offset + 0.25 * jitter(gen);
      z[static_cast<std::size_t>(k)] =
          centroid + radius * (1.0 + jitter(gen)) * std::polar(1.0, angle);
    }

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
      converged = true;
      for (int k = 0; k < deg; ++k) {
        auto& zk = z[static_cast<std::size_t>(k)];
        Complex denom{1.0, 0.0};
        for (int j = 0; j < deg; ++j)
          if (j != k) denom *= zk - z[static_cast<std::size_t>(j)];
        if (denom == Complex{0.0, 0.0}) denom = Complex{kEps, kEps};
        const Complex value = q(zk);
        const Complex delta = value / denom;
        zk -= delta;
        const double scale = std::max(1.0, std::abs(zk));
        const bool small_step = std::abs(delta) <= tol * scale;
        // Multiple roots stall at rounding level; accept a residual at that floor.
        const bool at_floor =
            std::abs(q(zk)) <= 8.0 * (deg + 1) * kEps * q.abs_eval(std::abs(zk));
        if (!small_step && !at_floor) converged = false;
      }
    }
    if (!converged)
      throw Error(ErrorKind::NoConvergence,
                  "Durand-Kerner did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }

  // Single-linkage clustering within 1e3 * tol.
  const std::size_t m = z.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double radius = 1e3 * tol;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      if (std::abs(z[i] - z[j]) <= radius * scale) parent[find(i)] = find(j);
    }

  std::vector<PolyRoot> roots;
  std::vector<std::size_t> cluster_of(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t c = find(i);
    if (cluster_of[c] == m) {
      cluster_of[c] = roots.size();
      roots.push_back({Complex{0.0, 0.0}, 0});
    }
    auto& r = roots[cluster_of[c]];
    r.value += z[i];
    r.multiplicity += 1;
  }
  for (auto& r : roots) {
    r.value /= static_cast<double>(r.multiplicity);
    if (r.multiplicity > 1) {
      // An m-fold root is a simple root of the (m-1)-th derivative; polish the
      // cluster mean there, staying inside the cluster radius.
      PolyC dq = q;
      for (int k = 1; k < r.multiplicity; ++k) dq = dq.derivative();
      const PolyC ddq = dq.derivative();
      const Complex start = r.value;
      Complex z0 = start;
      for (int it = 0; it < 8; ++it) {
        const Complex slope = ddq(z0);
        if (slope == Complex{0.0, 0.0}) break;
        const Complex next = z0 - dq(z0) / slope;
        if (std::abs(next - start) > radius * std::max(1.0, std::abs(start))) break;
        z0 = next;
      }
      r.value = z0;
    }
  }
  return roots;
}

int winding_number(const PolyC& p, Complex center, double radius, int samples) {
  double total = 0.0;
  Complex prev = p(center + radius);
  for (int k = 1; k <= samples; ++k) {
    const Complex cur = p(center + std::polar(radius, 2.0 * std::numbers::pi * k / samples));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace tpm
