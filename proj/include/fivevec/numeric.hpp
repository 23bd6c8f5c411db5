#pragma once

// Small dense linear algebra shared by every module: fixed-size aliases for
// five- and four-dimensional objects, the tolerance policy, null spaces and
// checked inversion.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fivevec {

using Vec4 = Eigen::Vector4d;
using RowVec4 = Eigen::RowVector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using RowVec5 = Eigen::Matrix<double, 1, 5>;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using CMat4 = Eigen::Matrix4cd;

// Five-dimensional indices are labelled {0,1,2,3,5}; label 5 lives in
// storage slot 4.
inline constexpr int kFifth = 4;
inline constexpr std::array<int, 5> kLabels{0, 1, 2, 3, 5};

/// Storage slot of an index label; throws on anything outside {0,1,2,3,5}.
int slot(int label);
/// Label of a storage slot (inverse of slot()).
int label(int slot);

enum class ErrorCode {
  SingularMatrix,
  ShapeMismatch,
  InvalidArgument,
  BasisMismatch,
  NotSimple,
  NotMaximalSpace,
  DimensionTooSmall,
  ZeroVector,
  NotInMaximalSpace,
  NotStandard,
  SingularBlock,
  NotOrthonormalInput,
  NoCommonDirection,
  DegenerateInducedMetric,
  InvalidGammaSet,
  NotO32,
  GridTooCoarse,
  NotDirectional,
  NotAntisymmetric,
  GridMismatch,
  ParseError,
  KindMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  /// Throws InvalidArgument unless both bounds are positive.
  void validate() const;
};

/// Minkowski metric diag(+1,-1,-1,-1).
const Mat4& eta4();
/// Five-dimensional metric diag(+1,-1,-1,-1,+1) in storage order.
const Mat5& eta5();

/// Largest absolute entry (0 for an empty matrix).
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Orthonormal basis of {v : |Mv| <= tol.rel * |M| * |v|}, obtained by
/// thresholding singular values at tol.rel times the largest one.
std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& m, Tolerance tol = {});

/// Numerical rank with the same thresholding as null_space().
int rank(const Eigen::MatrixXd& m, Tolerance tol = {});

/// Inverse of a square matrix. SingularMatrix when the 2-norm condition
/// number exceeds 1/tol.rel.
Eigen::MatrixXd invert(const Eigen::MatrixXd& m, Tolerance tol = {});

template <int N>
Eigen::Matrix<double, N, N> invert(const Eigen::Matrix<double, N, N>& m, Tolerance tol = {}) {
  return invert(Eigen::MatrixXd(m), tol);
}

/// |a-b| <= tol.abs + tol.rel * max(|a|,|b|) in the elementwise max norm.
bool approx_eq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Tolerance tol = {});
bool approx_eq(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, Tolerance tol = {});

/// Fixed-size and expression operands.
template <typename A, typename B>
bool approx_eq(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, Tolerance tol = {}) {
  using Dense = Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return approx_eq(Dense(a), Dense(b), tol);
}

bool all_finite(const Eigen::MatrixXd& m);

}  // namespace fivevec
