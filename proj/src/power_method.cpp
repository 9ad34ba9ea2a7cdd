#include "tpm/power_method.hpp"

namespace tpm {

std::string LimitClass::to_string() const {
  switch (kind) {
    case LimitKind::FrameVector:
      return std::string(sign < 0 ? "-" : "+") + "v" + std::to_string(index + 1);
    case LimitKind::Other:
      return "other";
    case LimitKind::None:
      break;
  }
  return "none";
}

LimitClass classify_limit(const Eigen::VectorXd& x, const Eigen::MatrixXd& frame_vectors, double radius) {
  LimitClass out;
  int matches = 0;
  for (Eigen::Index j = 0; j < frame_vectors.cols(); ++j) {
    const double plus = (x - frame_vectors.col(j)).norm();
    const double minus = (x + frame_vectors.col(j)).norm();
    if (std::min(plus, minus) <= radius) {
      ++matches;
      out.kind = LimitKind::FrameVector;
      out.index = j;
      out.sign = plus <= minus ? 1 : -1;
    }
  }
  if (matches != 1) return {LimitKind::Other, -1, 0};
  return out;
}

}  // namespace tpm
