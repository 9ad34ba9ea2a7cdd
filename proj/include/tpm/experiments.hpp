#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpm/eigen2d.hpp"
#include "tpm/frames.hpp"

namespace tpm {

struct ConvergenceCell {
  int n = 0;
  int d = 0;
  int trials = 0;
  int successes = 0;  // runs classified to a frame vector
  int other = 0;
  int none = 0;
  double mean_iterations = 0.0;

  bool tick() const { return successes == trials; }
};

struct ConvergenceGrid {
  std::vector<ConvergenceCell> cells;  // n-major, then d
  int max_iter = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;

  const ConvergenceCell& at(int n, int d) const;
};

/// Power method on the all-ones regular-simplex tensor sum_i v_i^{(x)d} for
/// every (n, d), `trials` uniform starts per cell. Trial t of cell (n, d)
/// draws from the stream derive_seed(seed, {n, d, t}).
ConvergenceGrid convergence_table(int n_min, int n_max, int d_min, int d_max, int trials, std::uint64_t seed,
                                  int max_iter = 100, double tol = 1e-10);

/// Columns n, d, trials, successes, verdict (tick / cross).
std::string convergence_csv(const ConvergenceGrid& g);
/// Rows d, columns n, one mark per cell.
std::string convergence_text(const ConvergenceGrid& g);

struct MbTable {
  int d = 0;
  bool degenerate = false;  // every direction is an eigenvector
  std::vector<EigenPair> pairs;
  int multiplicity_total = 0;
};

/// Eigenpairs of the all-ones Mercedes-Benz tensor for each order. A degenerate
/// order lists the four directions (0,1), (+-sqrt3/2, -1/2), (1,0) with
/// multiplicity 0 and their common eigenvalue.
std::vector<MbTable> mb_tables(int d_min = 3, int d_max = 10);

std::string mb_tables_json(const std::vector<MbTable>& tables);
std::string mb_tables_text(const std::vector<MbTable>& tables);

/// "0.750000000000000", "0.234194 - 0.107117i" style with 15 significant digits.
std::string format_complex(Complex z);

struct PerturbationRun {
  bool converged = false;
  int iterations = 0;
  Eigen::Index nearest = -1;  // zero-based frame column
  double distance = 0.0;      // min(||x - v||, ||x + v||) to that column
};

struct PerturbationReport {
  double tensor_fro = 0.0;
  double noise_fro = 0.0;
  std::vector<PerturbationRun> runs;
  int converged = 0;
  double max_distance = 0.0;   // over converged runs
  double mean_distance = 0.0;  // over converged runs
};

/// Adds a random symmetric dense tensor of Frobenius norm noise_fro to the
/// all-ones frame tensor and reports how far power-method limits land from the
/// frame vectors. Descriptive only. Throws InvalidArgs if noise_fro exceeds
/// 0.1 ||T||_F, CapExceeded if the dense form is too large.
PerturbationReport perturbation_study(const Frame& f, int d, double noise_fro, int trials, std::uint64_t seed,
                                      int max_iter = 1000, double tol = 1e-10);

std::string perturbation_json(const PerturbationReport& r);

}  // namespace tpm
