#include "tpm/frames.hpp"

#include <cmath>
#include <sstream>

#include "tpm/linalg.hpp"

namespace tpm {

double Frame::tightness_residual() const {
  const double ratio = static_cast<double>(size()) / static_cast<double>(dim());
  return (vectors * vectors.transpose() - ratio * Eigen::MatrixXd::Identity(dim(), dim())).norm();
}

double welch_bound(int n, int r) {
  if (n < 1 || r < n) throw Error(ErrorKind::InvalidArgs, "welch_bound needs r >= n >= 1");
  if (r == n) return 0.0;
  return std::sqrt(static_cast<double>(r - n) / (static_cast<double>(n) * (r - 1)));
}

Frame validate_frame(const Eigen::MatrixXd& v, double tol) {
  const Eigen::Index n = v.rows();
  const Eigen::Index r = v.cols();
  if (n < 1 || r < 1) throw Error(ErrorKind::InvalidArgs, "empty frame");
  for (Eigen::Index i = 0; i < r; ++i) {
    const double norm = v.col(i).norm();
    if (std::abs(norm - 1.0) > tol) {
      std::ostringstream msg;
      msg << "column " << i + 1 << " has norm " << norm;
      throw Error(ErrorKind::NotUnitNorm, msg.str());
    }
  }

  const Eigen::MatrixXd gram = v.transpose() * v;
  double lo = 1.0, hi = 0.0, sum = 0.0;
  Eigen::Index lo_i = 0, lo_j = 0, hi_i = 0, hi_j = 0, pairs = 0;
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < j; ++i) {
      const double a = std::abs(gram(i, j));
      if (a < lo) lo = a, lo_i = i, lo_j = j;
      if (a > hi) hi = a, hi_i = i, hi_j = j;
      sum += a;
      ++pairs;
    }
  if (pairs > 0 && hi - lo > tol) {
    std::ostringstream msg;
    msg << "|<v" << lo_i + 1 << ", v" << lo_j + 1 << ">| = " << lo << " but |<v" << hi_i + 1 << ", v" << hi_j + 1
        << ">| = " << hi << " (spread " << hi - lo << ")";
    throw Error(ErrorKind::NotEquiangular, msg.str());
  }

  Frame f;
  f.vectors = v;
  f.alpha = pairs > 0 ? sum / static_cast<double>(pairs) : 0.0;
  f.sigma = Eigen::MatrixXi::Ones(r, r);
  if (f.alpha > tol)
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < r; ++i)
        if (i != j && gram(i, j) < 0.0) f.sigma(i, j) = -1;

  const double ratio = static_cast<double>(r) / static_cast<double>(n);
  const Eigen::MatrixXd defect = v * v.transpose() - ratio * Eigen::MatrixXd::Identity(n, n);
  f.is_etf = r >= n && defect.cwiseAbs().maxCoeff() <= tol;
  return f;
}

Frame regular_simplex(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgs, "regular_simplex needs n >= 2");
  const double nd = n;
  Eigen::MatrixXd v(n, n + 1);
  const double diag = std::sqrt(1.0 + 1.0 / nd);
  const double shift = (std::sqrt(nd + 1.0) - 1.0) / std::pow(nd, 1.5);
  for (int i = 0; i < n; ++i) {
    v.col(i).setConstant(-shift);
    v(i, i) += diag;
  }
  v.col(n).setConstant(-1.0 / std::sqrt(nd));
  return validate_frame(v);
}

Frame mercedes_benz() {
  const double s = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXd v(2, 3);
  v << 0.0, s, -s,
       1.0, -0.5, -0.5;
  return validate_frame(v);
}

Frame cube_diagonals() {
  Eigen::MatrixXd v(3, 4);
  v << 1, -1, -1, -1,
       1,  1, -1,  1,
       1,  1,  1, -1;
  return validate_frame(v / std::sqrt(3.0));
}

Frame icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Eigen::MatrixXd v(3, 6);
  v << 0,   0,   1,  -1, phi, -phi,
       1,  -1, phi, phi,   0,    0,
     phi, phi,   0,   0,   1,    1;
  return validate_frame(v / std::sqrt(1.0 + phi * phi));
}

Frame lines16_r6() {
  Eigen::MatrixXd v(6, 16);
  v << 1, -1, -1, -1, -1, -1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,
       1, -1,  1,  1,  1,  1, -1, -1, -1, -1,  1,  1,  1,  1,  1,  1,
       1,  1, -1,  1,  1,  1, -1,  1,  1,  1, -1, -1, -1,  1,  1,  1,
       1,  1,  1, -1,  1,  1,  1, -1,  1,  1, -1,  1,  1, -1, -1,  1,
       1,  1,  1,  1, -1,  1,  1,  1, -1,  1,  1, -1,  1, -1,  1, -1,
       1,  1,  1,  1,  1, -1,  1,  1,  1, -1,  1,  1, -1,  1, -1, -1;
  return validate_frame(v / std::sqrt(6.0));
}

Frame es_r4_6lines() {
  const double r2 = std::sqrt(2.0) / 3.0;
  const double r6 = std::sqrt(6.0) / 3.0;
  const double t = 1.0 / 3.0;
  Eigen::MatrixXd v(4, 6);
  v << 1,   t,    t,    t,    t,    t,
       0, 2*r2, -r2,  -r2,  -r2,  -r2,
       0,   0,   r6,    0,  -r6,    0,
       0,   0,    0,   r6,    0,  -r6;
  return validate_frame(v);
}

std::vector<CatalogEntry> frame_catalog() {
  return {
      {"mb", "Mercedes-Benz frame, regular 2-simplex", mercedes_benz()},
      {"simplex3", "regular 3-simplex frame", regular_simplex(3)},
      {"cube", "diagonals of a cube", cube_diagonals()},
      {"icosahedron", "diagonals of a regular icosahedron", icosahedron()},
      {"lines16", "16 equiangular lines in R^6", lines16_r6()},
      {"es6", "6 equiangular lines in R^4, not tight", es_r4_6lines()},
  };
}

Frame frame_by_name(const std::string& name) {
  if (name.rfind("simplex", 0) == 0 && name.size() > 7) {
    int n = 0;
    try {
      n = std::stoi(name.substr(7));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgs, "bad simplex frame name '" + name + "'");
    }
    return regular_simplex(n);
  }
  for (auto& entry : frame_catalog())
    if (entry.name == name) return entry.frame;
  throw Error(ErrorKind::InvalidArgs, "unknown frame '" + name + "'");
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& v, double tol) { return nullspace(v, tol); }

KernelCondition kernel_condition_holds(const Frame& f, const Eigen::VectorXd& lambdas, int d, Eigen::Index j,
                                       double tol) {
  const Eigen::Index r = f.size();
  if (lambdas.size() != r) throw Error(ErrorKind::DimensionMismatch, "one coefficient per frame vector expected");
  if (j < 0 || j >= r) throw Error(ErrorKind::InvalidArgs, "frame index out of range");

  // V w with w_j = 0; then mu_j minimizes ||V w + mu_j v_j||.
  Eigen::VectorXd rest = Eigen::VectorXd::Zero(f.dim());
  for (Eigen::Index i = 0; i < r; ++i)
    if (i != j) rest += lambdas(i) * ipow(static_cast<double>(f.sigma(i, j)), d - 1) * f.vectors.col(i);
  const Eigen::VectorXd vj = f.vectors.col(j);
  const double mu = -vj.dot(rest) / vj.squaredNorm();

  KernelCondition out;
  out.residual = (rest + mu * vj).norm();
  out.holds = out.residual <= tol * std::max(1.0, rest.norm());
  if (out.holds) out.mu = mu;
  return out;
}

SymTensor frame_tensor(const Frame& f, int d, const Eigen::VectorXd& lambdas) {
  if (lambdas.size() == 0) return make_sym_tensor(f.vectors, Eigen::VectorXd::Ones(f.size()), d);
  return make_sym_tensor(f.vectors, lambdas, d);
}

}  // namespace tpm
