#include "fivevec/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace fivevec {

int slot(int label) {
  switch (label) {
    case 0:
    case 1:
    case 2:
    case 3:
      return label;
    case 5:
      return kFifth;
    default:
      throw Error(ErrorCode::InvalidArgument, "index label must be one of 0,1,2,3,5; got " + std::to_string(label));
  }
}

int label(int s) {
  if (s < 0 || s > kFifth) {
    throw Error(ErrorCode::InvalidArgument, "storage slot out of range: " + std::to_string(s));
  }
  return s == kFifth ? 5 : s;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotMaximalSpace: return "NotMaximalSpace";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInMaximalSpace: return "NotInMaximalSpace";
    case ErrorCode::NotStandard: return "NotStandard";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::NotOrthonormalInput: return "NotOrthonormalInput";
    case ErrorCode::NoCommonDirection: return "NoCommonDirection";
    case ErrorCode::DegenerateInducedMetric: return "DegenerateInducedMetric";
    case ErrorCode::InvalidGammaSet: return "InvalidGammaSet";
    case ErrorCode::NotO32: return "NotO32";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotDirectional: return "NotDirectional";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::KindMismatch: return "KindMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void Tolerance::validate() const {
  if (!(rel > 0.0) || !(abs > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
}

const Mat4& eta4() {
  static const Mat4 eta = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return eta;
}

const Mat5& eta5() {
  static const Mat5 eta = [] {
    Vec5 d;
    d << 1.0, -1.0, -1.0, -1.0, 1.0;
    return Mat5(d.asDiagonal());
  }();
  return eta;
}

bool all_finite(const Eigen::MatrixXd& m) {
  return m.allFinite();
}

namespace {

Eigen::JacobiSVD<Eigen::MatrixXd> full_svd(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeFullV);
}

}  // namespace

std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& m, Tolerance tol) {
  const auto cols = m.cols();
  std::vector<Eigen::VectorXd> basis;
  if (cols == 0) return basis;
  if (m.rows() == 0 || max_abs(m) == 0.0) {
    for (Eigen::Index i = 0; i < cols; ++i) basis.push_back(Eigen::VectorXd::Unit(cols, i));
    return basis;
  }
  const auto svd = full_svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rel * sv(0);
  // Columns of V beyond the numerical rank span the kernel; JacobiSVD sorts
  // singular values in decreasing order.
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  for (Eigen::Index i = r; i < cols; ++i) basis.push_back(svd.matrixV().col(i));
  return basis;
}

int rank(const Eigen::MatrixXd& m, Tolerance tol) {
  return static_cast<int>(m.cols()) - static_cast<int>(null_space(m, tol).size());
}

Eigen::MatrixXd invert(const Eigen::MatrixXd& m, Tolerance tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "invert requires a square matrix");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || smax / smin > 1.0 / tol.rel) {
    throw Error(ErrorCode::SingularMatrix, "condition estimate exceeds 1/tol.rel");
  }
  return m.fullPivLu().inverse();
}

namespace {

template <typename M>
bool approx_eq_impl(const M& a, const M& b, Tolerance tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "approx_eq operands differ in shape");
  }
  const double diff = max_abs(M(a - b));
  const double scale = std::max(max_abs(a), max_abs(b));
  return diff <= tol.abs + tol.rel * scale;
}

}  // namespace

bool approx_eq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Tolerance tol) {
  return approx_eq_impl(a, b, tol);
}

bool approx_eq(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, Tolerance tol) {
  return approx_eq_impl(a, b, tol);
}

}  // namespace fivevec
