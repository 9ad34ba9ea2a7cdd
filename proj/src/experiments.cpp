#include "tpm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tpm/error.hpp"
#include "tpm/parallel.hpp"
#include "tpm/power_method.hpp"
#include "tpm/rng.hpp"
#include "tpm/tensor.hpp"

namespace tpm {

const ConvergenceCell& ConvergenceGrid::at(int n, int d) const {
  for (const auto& c : cells)
    if (c.n == n && c.d == d) return c;
  throw Error(ErrorKind::InvalidArgs, "no cell (" + std::to_string(n) + ", " + std::to_string(d) + ")");
}

ConvergenceGrid convergence_table(int n_min, int n_max, int d_min, int d_max, int trials, std::uint64_t seed,
                                  int max_iter, double tol) {
  if (n_min < 2 || d_min < 2 || n_max < n_min || d_max < d_min)
    throw Error(ErrorKind::InvalidArgs, "ranges need 2 <= min <= max");
  if (trials < 1) throw Error(ErrorKind::InvalidArgs, "trials must be >= 1");

  ConvergenceGrid g;
  g.max_iter = max_iter;
  g.tol = tol;
  g.seed = seed;
  std::vector<Frame> frames;
  std::vector<SymTensor> tensors;
  for (int n = n_min; n <= n_max; ++n) {
    const Frame f = regular_simplex(n);
    for (int d = d_min; d <= d_max; ++d) {
      g.cells.push_back({n, d, trials});
      frames.push_back(f);
      tensors.push_back(frame_tensor(f, d));
    }
  }

  struct Outcome {
    LimitKind kind = LimitKind::None;
    int iterations = 0;
  };
  const std::size_t per_cell = static_cast<std::size_t>(trials);
  std::vector<Outcome> outcomes(g.cells.size() * per_cell);
  const RunOptions opts{max_iter, tol, false};
  parallel_for(outcomes.size(), [&](std::size_t k) {
    const std::size_t c = k / per_cell;
    const std::size_t t = k % per_cell;
    const auto& cell = g.cells[c];
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(cell.n), static_cast<std::uint64_t>(cell.d), t}));
    const Eigen::VectorXd x0 = sample_sphere(rng, cell.n);
    try {
      const PowerRunResult r = run(tensors[c], x0, opts, &frames[c]);
      outcomes[k] = {r.limit.kind, r.iterations};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroImage) throw;
      outcomes[k] = {LimitKind::None, 0};
    }
  });

  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    auto& cell = g.cells[c];
    double total = 0.0;
    for (std::size_t t = 0; t < per_cell; ++t) {
      const Outcome& o = outcomes[c * per_cell + t];
      if (o.kind == LimitKind::FrameVector) ++cell.successes;
      else if (o.kind == LimitKind::Other) ++cell.other;
      else ++cell.none;
      total += o.iterations;
    }
    cell.mean_iterations = total / trials;
  }
  return g;
}

std::string convergence_csv(const ConvergenceGrid& g) {
  std::ostringstream out;
  out << "n,d,trials,successes,verdict\n";
  for (const auto& c : g.cells)
    out << c.n << ',' << c.d << ',' << c.trials << ',' << c.successes << ',' << (c.tick() ? "tick" : "cross") << '\n';
  return out.str();
}

std::string convergence_text(const ConvergenceGrid& g) {
  int n_min = 1 << 30, n_max = 0, d_min = 1 << 30, d_max = 0;
  for (const auto& c : g.cells) {
    n_min = std::min(n_min, c.n);
    n_max = std::max(n_max, c.n);
    d_min = std::min(d_min, c.d);
    d_max = std::max(d_max, c.d);
  }
  std::ostringstream out;
  out << "d\\n";
  for (int n = n_min; n <= n_max; ++n) out << ' ' << (n < 10 ? " " : "") << n;
  out << '\n';
  for (int d = d_min; d <= d_max; ++d) {
    out << (d < 10 ? " " : "") << d << " ";
    for (int n = n_min; n <= n_max; ++n) out << "  " << (g.at(n, d).tick() ? 'Y' : 'x');
    out << '\n';
  }
  return out.str();
}

std::vector<MbTable> mb_tables(int d_min, int d_max) {
  if (d_min < 3 || d_max < d_min) throw Error(ErrorKind::InvalidArgs, "orders need 3 <= min <= max");
  const Frame mb = mercedes_benz();
  std::vector<MbTable> out;
  for (int d = d_min; d <= d_max; ++d) {
    const SymTensor t = frame_tensor(mb, d);
    MbTable table;
    table.d = d;
    try {
      table.pairs = all_eigenpairs_2d(t);
      for (const auto& p : table.pairs) table.multiplicity_total += p.multiplicity;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateForm) throw;
      table.degenerate = true;
      const double h = std::sqrt(3.0) / 2.0;
      for (const auto& [u, v] : {std::pair{0.0, 1.0}, {h, -0.5}, {-h, -0.5}, {1.0, 0.0}}) {
        EigenPair p;
        const Eigen::VectorXd x = Eigen::Vector2d(u, v);
        const auto er = eigen_residual(t, x);
        p.vector = x.cast<Complex>();
        p.eigenvalue = er.mu;
        p.residual = er.residual;
        p.multiplicity = 0;
        table.pairs.push_back(p);
      }
    }
    out.push_back(std::move(table));
  }
  return out;
}

std::string format_complex(Complex z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.15f", z.real());
  } else if (z.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.15fi", z.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%.15f %c %.15fi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  }
  return buf;
}

namespace {

nlohmann::ordered_json complex_json(Complex z) { return {z.real(), z.imag()}; }

}  // namespace

std::string mb_tables_json(const std::vector<MbTable>& tables) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    nlohmann::ordered_json jt;
    jt["d"] = t.d;
    jt["degenerate"] = t.degenerate;
    jt["multiplicity_total"] = t.multiplicity_total;
    jt["cs_count"] = cs_count(2, t.d);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& p : t.pairs) {
      nlohmann::ordered_json r;
      r["vector"] = {complex_json(p.vector(0)), complex_json(p.vector(1))};
      r["vector_text"] = {format_complex(p.vector(0)), format_complex(p.vector(1))};
      r["eigenvalue"] = complex_json(p.eigenvalue);
      r["eigenvalue_text"] = format_complex(p.eigenvalue);
      r["multiplicity"] = p.multiplicity;
      r["normalization"] = to_string(p.normalization);
      r["residual"] = p.residual;
      rows.push_back(r);
    }
    jt["rows"] = rows;
    out.push_back(jt);
  }
  return out.dump(2) + "\n";
}

std::string mb_tables_text(const std::vector<MbTable>& tables) {
  std::ostringstream out;
  for (const auto& t : tables) {
    out << "d = " << t.d;
    if (t.degenerate) out << "  (degenerate: every direction is an eigenvector; multiplicity undefined)";
    out << '\n';
    for (const auto& p : t.pairs) {
      out << "  (" << format_complex(p.vector(0)) << ", " << format_complex(p.vector(1)) << ")  "
          << format_complex(p.eigenvalue) << "  mult " << p.multiplicity;
      if (p.normalization == Normalization::Isotropic) out << "  [isotropic]";
      out << '\n';
    }
    out << "  total multiplicity " << t.multiplicity_total << " (expected " << cs_count(2, t.d) << ")\n";
  }
  return out.str();
}

PerturbationReport perturbation_study(const Frame& f, int d, double noise_fro, int trials, std::uint64_t seed,
                                      int max_iter, double tol) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgs, "trials must be >= 1");
  if (!(noise_fro >= 0.0)) throw Error(ErrorKind::InvalidArgs, "noise must be >= 0");
  const SymTensor t = frame_tensor(f, d);
  DenseTensor dense = to_dense(t);
  PerturbationReport rep;
  rep.tensor_fro = dense.frobenius_norm();
  rep.noise_fro = noise_fro;
  if (noise_fro > 0.1 * rep.tensor_fro)
    throw Error(ErrorKind::InvalidArgs, "noise exceeds 0.1 ||T||_F");

  if (noise_fro > 0.0) {
    // One Gaussian draw per multiset of indices, copied to every permutation.
    DenseTensor noise(dense.dim(), dense.order());
    Rng rng(derive_seed(seed, {0}));
    for (std::size_t flat = 0; flat < noise.size(); ++flat) {
      auto index = noise.multi_index(flat);
      std::sort(index.begin(), index.end());
      const std::size_t canonical = noise.flat_index(index);
      noise[flat] = canonical == flat ? rng.normal() : noise[canonical];
    }
    noise *= noise_fro / noise.frobenius_norm();
    dense += noise;
  }

  rep.runs.resize(static_cast<std::size_t>(trials));
  const RunOptions opts{max_iter, tol, false};
  parallel_for(rep.runs.size(), [&](std::size_t k) {
    Rng rng(derive_seed(seed, {1, k}));
    const Eigen::VectorXd x0 = sample_sphere(rng, dense.dim());
    PerturbationRun pr;
    try {
      const PowerRunResult r = run(dense, x0, opts);
      pr.converged = r.converged;
      pr.iterations = r.iterations;
      double best = 1e300;
      for (Eigen::Index j = 0; j < f.size(); ++j) {
        const double dist = aligned_displacement(r.final_x, f.vectors.col(j));
        if (dist < best) {
          best = dist;
          pr.nearest = j;
        }
      }
      pr.distance = best;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroImage) throw;
    }
    rep.runs[k] = pr;
  });

  double total = 0.0;
  for (const auto& r : rep.runs) {
    if (!r.converged) continue;
    ++rep.converged;
    rep.max_distance = std::max(rep.max_distance, r.distance);
    total += r.distance;
  }
  if (rep.converged > 0) rep.mean_distance = total / rep.converged;
  return rep;
}

std::string perturbation_json(const PerturbationReport& r) {
  nlohmann::ordered_json j;
  j["tensor_fro"] = r.tensor_fro;
  j["noise_fro"] = r.noise_fro;
  j["trials"] = r.runs.size();
  j["converged"] = r.converged;
  j["max_distance"] = r.max_distance;
  j["mean_distance"] = r.mean_distance;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& x : r.runs)
    runs.push_back({{"converged", x.converged},
                    {"iterations", x.iterations},
                    {"nearest", x.nearest < 0 ? std::string("none") : "v" + std::to_string(x.nearest + 1)},
                    {"distance", x.distance}});
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

}  // namespace tpm
