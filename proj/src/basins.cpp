#include "tpm/basins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "tpm/error.hpp"
#include "tpm/parallel.hpp"
#include "tpm/rng.hpp"

namespace tpm {

double alpha_step(double alpha, int d) {
  if (d < 3) throw Error(ErrorKind::InvalidArgs, "alpha_step needs d >= 3");
  const double a = ipow(alpha, d - 1);
  const double b = ipow(1.0 - alpha, d - 1);
  return (a - 0.5 * b + 0.5) / (1.0 + 0.5 * a + 0.5 * b);
}

std::vector<double> alpha_orbit(double alpha0, int d, int k) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw Error(ErrorKind::InvalidArgs, "alpha0 must lie in (0, 1)");
  if (k < 0) throw Error(ErrorKind::InvalidArgs, "orbit length must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k));
  double a = alpha0;
  for (int i = 0; i < k; ++i) {
    a = alpha_step(a, d);
    out.push_back(a);
  }
  return out;
}

Eigen::Vector2d BasinGrid::pixel_center(int row, int col, int resolution) {
  return {-1.0 + (2.0 * col + 1.0) / resolution, 1.0 - (2.0 * row + 1.0) / resolution};
}

BasinGrid render_basins(const SymTensor& t, const Frame& f, int resolution, int max_iter, double tol) {
  if (t.dim() != 2 || f.dim() != 2) throw Error(ErrorKind::InvalidArgs, "basins need a 2-dimensional tensor and frame");
  if (resolution < 16) throw Error(ErrorKind::InvalidArgs, "resolution must be >= 16");

  BasinGrid g;
  g.resolution = resolution;
  g.d = t.order();
  g.max_iter = max_iter;
  g.tol = tol;
  const std::size_t pixels = static_cast<std::size_t>(resolution) * resolution;
  g.labels.assign(pixels, kLabelOutside);
  g.iterations.assign(pixels, 0);

  const RunOptions opts{max_iter, tol, false};
  // One task per row keeps scheduling overhead low.
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t row) {
    for (int col = 0; col < resolution; ++col) {
      const std::size_t idx = row * resolution + col;
      const Eigen::Vector2d p = BasinGrid::pixel_center(static_cast<int>(row), col, resolution);
      if (p.squaredNorm() > 1.0) continue;
      if (p.squaredNorm() == 0.0) {
        g.labels[idx] = kLabelNone;
        continue;
      }
      try {
        const PowerRunResult r = run(t, Eigen::VectorXd(p), opts, &f);
        g.iterations[idx] = r.iterations;
        switch (r.limit.kind) {
          case LimitKind::FrameVector: g.labels[idx] = static_cast<int>(r.limit.index); break;
          case LimitKind::Other: g.labels[idx] = kLabelOther; break;
          case LimitKind::None: g.labels[idx] = kLabelNone; break;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroImage) throw;
        g.labels[idx] = kLabelNone;
      }
    }
  });
  return g;
}

BasinStats basin_stats(const BasinGrid& g) {
  BasinStats s;
  double total = 0.0;
  for (std::size_t i = 0; i < g.labels.size(); ++i) {
    const int l = g.labels[i];
    if (l == kLabelOutside) continue;
    ++s.disk_pixels;
    if (l >= 0) ++s.labeled;
    else if (l == kLabelOther) ++s.other;
    else ++s.none;
    total += g.iterations[i];
    s.max_iterations = std::max(s.max_iterations, g.iterations[i]);
  }
  if (s.disk_pixels > 0) s.mean_iterations = total / static_cast<double>(s.disk_pixels);
  return s;
}

Rgb label_color(int label) {
  static const Rgb kPalette[] = {{0, 0, 255},   {255, 0, 0},   {0, 160, 0},   {255, 200, 0},
                                 {160, 0, 200}, {0, 200, 200}, {255, 120, 0}, {120, 70, 20}};
  if (label == kLabelOutside) return {255, 255, 255};
  if (label == kLabelOther) return {128, 128, 128};
  if (label == kLabelNone) return {0, 0, 0};
  return kPalette[static_cast<std::size_t>(label) % std::size(kPalette)];
}

std::string to_ppm(const BasinGrid& g) {
  std::string out = "P6\n" + std::to_string(g.resolution) + " " + std::to_string(g.resolution) + "\n255\n";
  out.reserve(out.size() + g.labels.size() * 3);
  for (int l : g.labels) {
    const Rgb c = label_color(l);
    out.append(reinterpret_cast<const char*>(c.data()), 3);
  }
  return out;
}

std::string basin_sidecar_json(const BasinGrid& g) {
  const BasinStats s = basin_stats(g);
  nlohmann::ordered_json j;
  j["resolution"] = g.resolution;
  j["d"] = g.d;
  j["max_iter"] = g.max_iter;
  j["tol"] = g.tol;
  nlohmann::ordered_json colors;
  for (int l = 0; l < 3; ++l) {
    const Rgb c = label_color(l);
    colors["v" + std::to_string(l + 1)] = {c[0], c[1], c[2]};
  }
  for (auto [name, l] : {std::pair{"other", kLabelOther}, {"none", kLabelNone}, {"outside", kLabelOutside}}) {
    const Rgb c = label_color(l);
    colors[name] = {c[0], c[1], c[2]};
  }
  j["colors"] = colors;
  j["iterations"] = {{"mean", s.mean_iterations}, {"max", s.max_iterations}};
  j["counts"] = {{"disk", s.disk_pixels}, {"labeled", s.labeled}, {"other", s.other}, {"none", s.none}};
  return j.dump(2) + "\n";
}

SectorReport sector_check(const SymTensor& t, const Frame& f, int samples, std::uint64_t seed, int max_iter,
                          double tol) {
  const int d = t.order();
  if (t.dim() != 2 || f.dim() != 2 || d % 2 != 0 || d < 6)
    throw Error(ErrorKind::PreconditionFailed, "sector check needs n = 2 and even d >= 6");
  constexpr double kSkip = 1e-6;

  SectorReport rep;
  rep.samples = samples;
  std::vector<int> outcome(static_cast<std::size_t>(std::max(samples, 0)), 0);  // 0 skip, 1 pass, 2 fail
  const RunOptions opts{max_iter, tol, false};
  parallel_for(outcome.size(), [&](std::size_t s) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(d), s}));
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const Eigen::VectorXd x0 = Eigen::Vector2d(std::cos(theta), std::sin(theta));

    // Best and runner-up among the signed frame vectors +-v_j.
    double best = -2.0, second = -2.0;
    Eigen::Index best_j = -1;
    int best_sign = 0;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      const double c = f.vectors.col(j).dot(x0);
      for (int sign : {1, -1}) {
        const double v = sign * c;
        if (v > best) {
          second = best;
          best = v;
          best_j = j;
          best_sign = sign;
        } else if (v > second) {
          second = v;
        }
      }
    }
    const double gap = 0.5 * (std::acos(std::clamp(second, -1.0, 1.0)) - std::acos(std::clamp(best, -1.0, 1.0)));
    if (gap <= kSkip) return;

    const PowerRunResult r = run(t, x0, opts, &f);
    const bool ok = r.limit.is_frame_vector() && r.limit.index == best_j && r.limit.sign == best_sign;
    outcome[s] = ok ? 1 : 2;
  });
  for (int o : outcome) {
    if (o == 0) ++rep.skipped;
    else if (o == 1) ++rep.passed;
    else ++rep.failed;
  }
  return rep;
}

}  // namespace tpm
