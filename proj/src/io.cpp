#include "tpm/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "tpm/error.hpp"

namespace tpm {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_columns(const Eigen::MatrixXd& v) {
  Json cols = Json::array();
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Json col = Json::array();
    for (Eigen::Index i = 0; i < v.rows(); ++i) col.push_back(v(i, j));
    cols.push_back(col);
  }
  return cols;
}

Eigen::MatrixXd columns_from(const Json& cols) {
  if (!cols.is_array() || cols.empty()) throw Error(ErrorKind::InvalidArgs, "\"V\" must be a non-empty array of columns");
  const std::size_t n = cols.front().is_array() ? cols.front().size() : 0;
  if (n == 0) throw Error(ErrorKind::InvalidArgs, "\"V\" columns must be non-empty arrays");
  Eigen::MatrixXd v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!cols[j].is_array() || cols[j].size() != n)
      throw Error(ErrorKind::DimensionMismatch, "column " + std::to_string(j) + " has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      if (!cols[j][i].is_number()) throw Error(ErrorKind::InvalidArgs, "\"V\" entries must be numbers");
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j][i].get<double>();
    }
  }
  return v;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgs, std::string("malformed JSON: ") + e.what());
  }
}

Json frame_json(const Frame& f) {
  Json j;
  j["n"] = f.dim();
  j["r"] = f.size();
  j["V"] = matrix_columns(f.vectors);
  j["alpha"] = f.alpha;
  j["is_etf"] = f.is_etf;
  return j;
}

}  // namespace

std::string tensor_to_json(const SymTensor& t) {
  Json j;
  j["n"] = t.dim();
  j["r"] = t.rank();
  j["d"] = t.order();
  j["lambdas"] = std::vector<double>(t.lambdas().data(), t.lambdas().data() + t.lambdas().size());
  j["V"] = matrix_columns(t.factors());
  return j.dump(2) + "\n";
}

SymTensor tensor_from_json(const std::string& text) {
  const Json j = parse(text);
  if (!j.is_object() || !j.contains("d") || !j.contains("lambdas") || !j.contains("V"))
    throw Error(ErrorKind::InvalidArgs, "tensor JSON needs \"d\", \"lambdas\" and \"V\"");
  if (!j["d"].is_number_integer()) throw Error(ErrorKind::InvalidArgs, "\"d\" must be an integer");
  const Eigen::MatrixXd v = columns_from(j["V"]);
  const Json& lj = j["lambdas"];
  if (!lj.is_array()) throw Error(ErrorKind::InvalidArgs, "\"lambdas\" must be an array");
  Eigen::VectorXd l(static_cast<Eigen::Index>(lj.size()));
  for (std::size_t i = 0; i < lj.size(); ++i) {
    if (!lj[i].is_number()) throw Error(ErrorKind::InvalidArgs, "\"lambdas\" entries must be numbers");
    l(static_cast<Eigen::Index>(i)) = lj[i].get<double>();
  }
  if (j.contains("n") && j["n"].get<long long>() != v.rows())
    throw Error(ErrorKind::DimensionMismatch, "\"n\" disagrees with the column length");
  if (j.contains("r") && j["r"].get<long long>() != v.cols())
    throw Error(ErrorKind::DimensionMismatch, "\"r\" disagrees with the number of columns");
  return make_sym_tensor(v, l, j["d"].get<int>());
}

std::string frame_to_json(const Frame& f) { return frame_json(f).dump(2) + "\n"; }

Frame frame_from_json(const std::string& text, double tol) {
  const Json j = parse(text);
  if (!j.is_object() || !j.contains("V")) throw Error(ErrorKind::InvalidArgs, "frame JSON needs \"V\"");
  return validate_frame(columns_from(j["V"]), tol);
}

std::string certificate_to_json(const RobustnessCertificate& c) {
  Json j;
  if (c.vector_index) {
    j["vector_index"] = *c.vector_index + 1;
    j["vector_sign"] = c.vector_sign;
  } else {
    j["vector_index"] = nullptr;
  }
  j["vector"] = std::vector<double>(c.vector.data(), c.vector.data() + c.vector.size());
  j["mu"] = c.mu;
  j["residual"] = c.residual;
  j["rho_numeric"] = c.rho_numeric;
  if (c.bound_general)
    j["bound_general"] = {{"tight", c.bound_general->tight}, {"coarse", c.bound_general->coarse}};
  else
    j["bound_general"] = nullptr;
  j["bound_kernel"] = c.bound_kernel ? Json(*c.bound_kernel) : Json(nullptr);
  if (c.bound_allones)
    j["bound_allones"] = {{"bound", c.bound_allones->bound}, {"eigenvalue", c.bound_allones->eigenvalue}};
  else
    j["bound_allones"] = nullptr;
  j["verdict"] = to_string(c.verdict);
  return j.dump(2) + "\n";
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgs, "cannot parse \"" + item + "\" as a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(ErrorKind::InvalidArgs, "cannot parse \"" + item + "\" as a number");
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorKind::InvalidArgs, "empty vector");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename into " + path);
  }
}

}  // namespace tpm
