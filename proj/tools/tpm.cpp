// tpm: command-line front end for the tensor power method library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpm/basins.hpp"
#include "tpm/eigen2d.hpp"
#include "tpm/error.hpp"
#include "tpm/experiments.hpp"
#include "tpm/frames.hpp"
#include "tpm/io.hpp"
#include "tpm/power_method.hpp"
#include "tpm/robustness.hpp"

namespace {

using namespace tpm;

void emit(const std::string& content, const std::string& out) {
  if (out.empty())
    std::cout << content;
  else
    write_file_atomic(out, content);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgs, "range must look like 3..10 or 6, got '" + text + "'");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// frames ---------------------------------------------------------------------

void cmd_frames_list() {
  std::cout << "name         n   r   alpha            ETF  description\n";
  for (const auto& e : frame_catalog()) {
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-3ld %-3ld %-16.12f %-4s %s\n", e.name.c_str(),
                  static_cast<long>(e.frame.dim()), static_cast<long>(e.frame.size()), e.frame.alpha,
                  e.frame.is_etf ? "yes" : "no", e.description.c_str());
    std::cout << line;
  }
}

void cmd_frames_validate(const std::string& path, double tol) {
  const Frame f = frame_from_json(read_file(path), tol);
  double lo = 1e300, hi = 0.0;
  const Eigen::MatrixXd gram = f.vectors.transpose() * f.vectors;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    for (Eigen::Index j = i + 1; j < f.size(); ++j) {
      lo = std::min(lo, std::abs(gram(i, j)));
      hi = std::max(hi, std::abs(gram(i, j)));
    }
  if (f.size() < 2) lo = hi = 0.0;
  std::cout << "n " << f.dim() << "\nr " << f.size() << "\nalpha " << fmt(f.alpha) << "\nalpha_spread "
            << fmt(hi - lo) << "\nwelch " << fmt(f.size() >= f.dim() ? welch_bound(f.dim(), f.size()) : 0.0)
            << "\netf_residual " << fmt(f.tightness_residual()) << "\nis_etf " << (f.is_etf ? "true" : "false")
            << "\nkernel_dim " << kernel_basis(f.vectors).cols() << "\n";
}

// run ------------------------------------------------------------------------

void cmd_run(const std::string& tensor_path, const std::string& x0_text, int iters, double tol,
             const std::string& frame_name, const std::string& trace) {
  const SymTensor t = tensor_from_json(read_file(tensor_path));
  const Eigen::VectorXd x0 = parse_vector(x0_text);
  if (x0.size() != t.dim()) throw Error(ErrorKind::DimensionMismatch, "x0 length differs from tensor dimension");

  std::optional<Frame> frame;
  if (!frame_name.empty()) {
    frame = frame_by_name(frame_name);
  } else {
    frame = Frame{t.factors(), 0.0, {}, false};
  }
  const PowerRunResult r = run(t, x0, RunOptions{iters, tol, !trace.empty()}, &*frame);

  if (!trace.empty()) {
    std::ostringstream csv;
    csv << "k";
    for (Eigen::Index i = 0; i < t.dim(); ++i) csv << ",x" << i + 1;
    csv << ",displacement\n";
    csv.precision(17);
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
      csv << k;
      for (Eigen::Index i = 0; i < t.dim(); ++i) csv << ',' << r.trajectory[k](i);
      csv << ',' << r.displacements[k] << '\n';
    }
    write_file_atomic(trace, csv.str());
  }

  nlohmann::ordered_json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["last_displacement"] = r.last_displacement;
  j["final_x"] = std::vector<double>(r.final_x.data(), r.final_x.data() + r.final_x.size());
  j["limit"] = r.limit.to_string();
  std::cout << j.dump(2) << "\n";
}

// certify --------------------------------------------------------------------

void cmd_certify(const std::string& tensor_path, const std::string& vector_text, const std::string& frame_name,
                 int d, int vector_index, const std::string& out) {
  RobustnessCertificate c;
  if (!tensor_path.empty()) {
    if (vector_text.empty()) throw Error(ErrorKind::InvalidArgs, "--tensor needs --vector");
    const SymTensor t = tensor_from_json(read_file(tensor_path));
    std::optional<Frame> context;
    if (!frame_name.empty()) context = frame_by_name(frame_name);
    c = certify(t, parse_vector(vector_text), context ? &*context : nullptr);
  } else {
    if (frame_name.empty() || d < 2) throw Error(ErrorKind::InvalidArgs, "give --tensor/--vector or --frame/--d");
    const Frame f = frame_by_name(frame_name);
    const SymTensor t = frame_tensor(f, d);
    Eigen::VectorXd v;
    if (!vector_text.empty()) {
      v = parse_vector(vector_text);
    } else {
      if (vector_index < 1 || vector_index > f.size())
        throw Error(ErrorKind::InvalidArgs, "--vector-index must lie in 1.." + std::to_string(f.size()));
      v = f.vectors.col(vector_index - 1);
    }
    c = certify(t, v, &f);
  }
  emit(certificate_to_json(c), out);
}

// eigen2d --------------------------------------------------------------------

void cmd_eigen2d(const std::string& tensor_path, const std::string& frame_name, int d, const std::string& format,
                 double tol, const std::string& out) {
  std::optional<SymTensor> t;
  if (!tensor_path.empty())
    t = tensor_from_json(read_file(tensor_path));
  else if (!frame_name.empty() && d >= 2)
    t = frame_tensor(frame_by_name(frame_name), d);
  else
    throw Error(ErrorKind::InvalidArgs, "give --tensor or --frame/--d");

  const auto pairs = all_eigenpairs_2d(*t, tol);
  std::ostringstream s;
  if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& p : pairs)
      rows.push_back({{"vector", {{p.vector(0).real(), p.vector(0).imag()}, {p.vector(1).real(), p.vector(1).imag()}}},
                      {"eigenvalue", {p.eigenvalue.real(), p.eigenvalue.imag()}},
                      {"multiplicity", p.multiplicity},
                      {"normalization", to_string(p.normalization)},
                      {"residual", p.residual}});
    s << nlohmann::ordered_json{{"d", t->order()}, {"pairs", rows}}.dump(2) << "\n";
  } else if (format == "csv") {
    s << "u_re,u_im,v_re,v_im,mu_re,mu_im,multiplicity,normalization\n";
    s.precision(17);
    for (const auto& p : pairs)
      s << p.vector(0).real() << ',' << p.vector(0).imag() << ',' << p.vector(1).real() << ','
        << p.vector(1).imag() << ',' << p.eigenvalue.real() << ',' << p.eigenvalue.imag() << ',' << p.multiplicity
        << ',' << to_string(p.normalization) << '\n';
  } else {
    s << "eigenvector | eigenvalue | multiplicity\n";
    for (const auto& p : pairs) {
      s << "(" << format_complex(p.vector(0)) << ", " << format_complex(p.vector(1)) << ") | "
        << format_complex(p.eigenvalue) << " | " << p.multiplicity;
      if (p.normalization == Normalization::Isotropic) s << "  [isotropic]";
      s << '\n';
    }
  }
  emit(s.str(), out);
}

// basins ---------------------------------------------------------------------

void cmd_basins(int d, int res, int iters, double tol, const std::string& frame_name, std::string out) {
  const Frame f = frame_by_name(frame_name);
  const SymTensor t = frame_tensor(f, d);
  if (out.empty()) out = "basins_d" + std::to_string(d) + ".ppm";
  const auto start = std::chrono::steady_clock::now();
  const BasinGrid g = render_basins(t, f, res, iters, tol);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file_atomic(out, to_ppm(g));
  write_file_atomic(out + ".json", basin_sidecar_json(g));
  const BasinStats s = basin_stats(g);
  std::cout << "wrote " << out << " and " << out << ".json\n"
            << "disk pixels " << s.disk_pixels << ", labeled " << s.labeled << ", other " << s.other << ", none "
            << s.none << ", mean iterations " << fmt(s.mean_iterations) << ", " << fmt(secs) << " s\n";
}

// experiments ----------------------------------------------------------------

void cmd_table1(int trials, std::uint64_t seed, int iters, double tol, const std::string& n_range,
                const std::string& d_range, const std::string& out) {
  const auto [n0, n1] = parse_range(n_range);
  const auto [d0, d1] = parse_range(d_range);
  const ConvergenceGrid g = convergence_table(n0, n1, d0, d1, trials, seed, iters, tol);
  std::cout << convergence_text(g);
  if (!out.empty()) write_file_atomic(out, convergence_csv(g));
}

void cmd_mbtables(const std::string& d_range, const std::string& out) {
  const auto [d0, d1] = parse_range(d_range);
  const auto tables = mb_tables(d0, d1);
  std::cout << mb_tables_text(tables);
  if (!out.empty()) write_file_atomic(out, mb_tables_json(tables));
}

void cmd_perturb(const std::string& frame_name, int d, double noise, int trials, std::uint64_t seed,
                 const std::string& out) {
  const auto r = perturbation_study(frame_by_name(frame_name), d, noise, trials, seed);
  emit(perturbation_json(r), out);
  if (!out.empty())
    std::cout << "converged " << r.converged << "/" << r.runs.size() << ", max distance " << fmt(r.max_distance)
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor power method toolkit: symmetric tensors in decomposition form, robustness certificates,\n"
               "equiangular frames, eigenpairs of 2-dimensional tensors and basins of attraction."};
  app.require_subcommand(1);

  // frames
  auto* frames = app.add_subcommand("frames", "Frame catalog and validation");
  frames->require_subcommand(1);
  frames->add_subcommand("list", "List the built-in frames (n, r, alpha, ETF flag)");
  auto* fvalidate = frames->add_subcommand("validate", "Validate a frame JSON file");
  std::string frame_file;
  double frame_tol = kFrameTol;
  fvalidate->add_option("file", frame_file, "Frame JSON ({\"V\": [[column], ...]})")->required();
  fvalidate->add_option("--tol", frame_tol, "Equiangularity / tightness tolerance")->capture_default_str();

  // run
  auto* runc = app.add_subcommand("run", "Run the power method from one start");
  std::string tensor_path, x0_text, trace, frame_name;
  int iters = 100;
  double tol = 1e-10;
  runc->add_option("--tensor", tensor_path, "Tensor JSON file")->required();
  runc->add_option("--x0", x0_text, "Start vector, comma separated")->required();
  runc->add_option("--iters", iters,
                   "Maximum iterations (default 100, the budget of the table1 convergence grid)")
      ->capture_default_str();
  runc->add_option("--tol", tol,
                   "Displacement threshold for convergence (default 1e-10, the table1 convergence threshold)")
      ->capture_default_str();
  runc->add_option("--frame", frame_name, "Classify the limit against this named frame (default: the tensor's generators)");
  runc->add_option("--trace", trace, "Write k, x components, displacement as CSV");

  // certify
  auto* cert = app.add_subcommand("certify", "Robustness certificate of an eigenvector");
  std::string vector_text, cert_out;
  int cert_d = 0, vector_index = 0;
  std::string cert_tensor, cert_frame;
  cert->add_option("--tensor", cert_tensor, "Tensor JSON file");
  cert->add_option("--vector", vector_text, "Eigenvector, comma separated");
  cert->add_option("--frame", cert_frame, "Named frame; with --d builds the all-ones frame tensor");
  cert->add_option("--d", cert_d, "Tensor order for --frame");
  cert->add_option("--vector-index", vector_index, "One-based frame column to certify");
  cert->add_option("--out", cert_out, "Write the JSON certificate here instead of stdout");

  // eigen2d
  auto* e2 = app.add_subcommand("eigen2d", "All complex eigenpairs of a 2-dimensional tensor");
  std::string e2_tensor, e2_frame, e2_format = "table", e2_out;
  int e2_d = 0;
  double e2_tol = 1e-9;
  e2->add_option("--tensor", e2_tensor, "Tensor JSON file");
  e2->add_option("--frame", e2_frame, "Named 2-dimensional frame (with --d)");
  e2->add_option("--d", e2_d, "Tensor order for --frame");
  e2->add_option("--format", e2_format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  e2->add_option("--tol", e2_tol, "Root tolerance; roots within 1e3*tol merge")->capture_default_str();
  e2->add_option("--out", e2_out, "Output file (default stdout)");

  // basins
  auto* bas = app.add_subcommand("basins", "Render basins of attraction on the unit disk (PPM + JSON sidecar)");
  int bas_d = 0, bas_res = 512, bas_iters = 200;
  double bas_tol = 1e-10;
  std::string bas_frame = "mb", bas_out;
  bas->add_option("--d", bas_d, "Tensor order")->required();
  bas->add_option("--res", bas_res, "Pixels per side (>= 16)")->capture_default_str();
  bas->add_option("--iters", bas_iters,
                  "Iterations per pixel (default 200, twice the table1 budget so odd-order boundaries resolve)")
      ->capture_default_str();
  bas->add_option("--tol", bas_tol, "Convergence threshold")->capture_default_str();
  bas->add_option("--frame", bas_frame, "Named 2-dimensional frame")->capture_default_str();
  bas->add_option("--out", bas_out, "PPM path (default basins_d<d>.ppm); sidecar at <out>.json");

  // table1
  auto* t1 = app.add_subcommand("table1", "Convergence grid of the regular-simplex tensors");
  int t1_trials = 20, t1_iters = 100;
  std::uint64_t t1_seed = 7;
  double t1_tol = 1e-10;
  std::string t1_n = "2..10", t1_d = "2..10", t1_out;
  t1->add_option("--trials", t1_trials, "Random starts per cell")->capture_default_str();
  t1->add_option("--seed", t1_seed, "Master seed")->capture_default_str();
  t1->add_option("--iters", t1_iters, "Iterations per run (default 100, matching the convergence grid)")->capture_default_str();
  t1->add_option("--tol", t1_tol, "Convergence threshold (default 1e-10, matching the convergence grid)")->capture_default_str();
  t1->add_option("--n", t1_n, "Dimension range")->capture_default_str();
  t1->add_option("--d", t1_d, "Order range")->capture_default_str();
  t1->add_option("--out", t1_out, "CSV output (n, d, trials, successes, verdict)");

  // mbtables
  auto* mbt = app.add_subcommand("mbtables", "Eigenpairs of the Mercedes-Benz tensor per order");
  std::string mbt_d = "3..10", mbt_out;
  mbt->add_option("--d", mbt_d, "Order range")->capture_default_str();
  mbt->add_option("--out", mbt_out, "JSON output");

  // perturb
  auto* per = app.add_subcommand("perturb", "Exploratory: power method on a noisy frame tensor");
  std::string per_frame = "mb", per_out;
  int per_d = 6, per_trials = 50;
  double per_noise = 1e-3;
  std::uint64_t per_seed = 7;
  per->add_option("--frame", per_frame, "Named frame")->capture_default_str();
  per->add_option("--d", per_d, "Tensor order")->capture_default_str();
  per->add_option("--noise", per_noise, "Frobenius norm of the symmetric noise")->capture_default_str();
  per->add_option("--trials", per_trials, "Random starts")->capture_default_str();
  per->add_option("--seed", per_seed, "Master seed")->capture_default_str();
  per->add_option("--out", per_out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (frames->parsed()) {
      if (fvalidate->parsed())
        cmd_frames_validate(frame_file, frame_tol);
      else
        cmd_frames_list();
    } else if (runc->parsed()) {
      cmd_run(tensor_path, x0_text, iters, tol, frame_name, trace);
    } else if (cert->parsed()) {
      cmd_certify(cert_tensor, vector_text, cert_frame, cert_d, vector_index, cert_out);
    } else if (e2->parsed()) {
      cmd_eigen2d(e2_tensor, e2_frame, e2_d, e2_format, e2_tol, e2_out);
    } else if (bas->parsed()) {
      cmd_basins(bas_d, bas_res, bas_iters, bas_tol, bas_frame, bas_out);
    } else if (t1->parsed()) {
      cmd_table1(t1_trials, t1_seed, t1_iters, t1_tol, t1_n, t1_d, t1_out);
    } else if (mbt->parsed()) {
      cmd_mbtables(mbt_d, mbt_out);
    } else if (per->parsed()) {
      cmd_perturb(per_frame, per_d, per_noise, per_trials, per_seed, per_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numeric_failure(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
