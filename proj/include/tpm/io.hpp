#pragma once

#include <string>

#include <Eigen/Core>

#include "tpm/frames.hpp"
#include "tpm/robustness.hpp"
#include "tpm/tensor.hpp"

namespace tpm {

/// {"n","r","d","lambdas":[...],"V":[[column 1], [column 2], ...]}
std::string tensor_to_json(const SymTensor& t);
/// Throws InvalidArgs on malformed input, DimensionMismatch if n / r disagree with the data.
SymTensor tensor_from_json(const std::string& text);

/// Tensor block of the frame plus {"alpha", "is_etf"}.
std::string frame_to_json(const Frame& f);
/// Reads the "V" block (and ignores cached fields) then validates.
Frame frame_from_json(const std::string& text, double tol = kFrameTol);

std::string certificate_to_json(const RobustnessCertificate& c);

/// "0.3,0.9" -> vector. Throws InvalidArgs.
Eigen::VectorXd parse_vector(const std::string& text);

/// Throws Io.
std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`. Throws Io.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace tpm
