#pragma once

// Poincare transformations of Lorentz charts and the induced transformation
// of five-tensor components in the O- and P-bases, the five-dimensional
// homogeneous representation, the covariant-coordinate 1-form and the
// five-tensors built from transformation parameters.

#include "fivevec/flat_connection.hpp"
#include "fivevec/pentaspace.hpp"

namespace fivevec {

/// x' = lambda x + a.
struct PoincareTransform {
  Mat4 lambda = Mat4::Identity();
  Vec4 a = Vec4::Zero();

  /// InvalidArgument unless lambda^T eta lambda = eta to 1e-12.
  void validate() const;
  Vec4 apply(const Vec4& x) const { return lambda * x + a; }
  static PoincareTransform translation(const Vec4& a);
  static PoincareTransform lorentz(const Mat4& lambda);
};

/// t1 after t2: (L1 L2, L1 a2 + a1).
PoincareTransform compose(const PoincareTransform& t1, const PoincareTransform& t2);
PoincareTransform inverse(const PoincareTransform& t);

/// x'_A = x_B L^B_A with L^a_b = (lambda^-1)^a_b, L^5_b = kappa a_b,
/// L^a_5 = 0, L^5_5 = 1. Acts on covariant quintuples as row vectors; it is
/// also the P-basis change p'_A = p_B L^B_A under t.
Mat5 homogeneous_rep(const PoincareTransform& t, double kappa = 1.0);

/// O-basis change e'_A = e_B L^B_A under t: blockdiag(lambda^-1, 1).
Mat5 o_basis_change(const PoincareTransform& t);

/// Generic component laws for a basis change e' = e K.
Vec5 transform_vector_components(const Vec5& v, const Mat5& k);
RowVec5 transform_form_components(const RowVec5& w, const Mat5& k);

/// v'^a = lambda v, v'^5 = v^5 (forms: w' = w lambda^-1, w'_5 = w_5).
FiveVector transform_components_o(const FiveVector& v, const PoincareTransform& t);
FiveForm transform_components_o(const FiveForm& w, const PoincareTransform& t);

/// v'^a = lambda v, v'^5 = v^5 - kappa a_a lambda^a_b v^b;
/// w'_a = w_b (lambda^-1)^b_a + kappa a_a w_5, w'_5 = w_5.
FiveVector transform_components_p(const FiveVector& v, const PoincareTransform& t, double kappa = 1.0);
FiveForm transform_components_p(const FiveForm& w, const PoincareTransform& t, double kappa = 1.0);

/// The covariant-coordinate 1-form at chart point x: P-dual components
/// (x_a, 1/kappa) and O-dual components (0,0,0,0,1/kappa).
struct CovCoordForm {
  Vec5 p_dual;
  Vec5 o_dual;
};

/// InvalidArgument when chart.kappa == 0.
CovCoordForm build_cov_coord_form(const LorentzChart& chart, const Vec4& x);

/// nabla_mu x~ as rows mu of components; both routes must agree.
struct NablaCovCoord {
  Eigen::Matrix<double, 4, 5> p_route;  ///< d_mu of P-dual components
  Eigen::Matrix<double, 4, 5> o_route;  ///< -G^5_{A mu}/kappa via O-basis coefficients, re-expressed on q~
};

NablaCovCoord nabla_cov_coord(const LorentzChart& chart, const Vec4& x);

/// T^a_b = l^a_b, T^5_b = b_b, T^a_5 = 0, T^5_5 = 1.
struct ParamTensorT {
  Mat5 t = Mat5::Identity();

  static ParamTensorT from(const Mat4& l, const RowVec4& b);
  Mat4 l() const { return t.topLeftCorner<4, 4>(); }
  RowVec4 b() const { return t.block<1, 4>(kFifth, 0); }
};

/// l' = lambda l lambda^-1, b' = b lambda^-1 + a - a lambda l lambda^-1 (a lowered).
ParamTensorT transform_t(const ParamTensorT& tt, const PoincareTransform& t);
/// K^-1 T K with K = homogeneous_rep(t).
ParamTensorT transform_t_tensor_law(const ParamTensorT& tt, const PoincareTransform& t);

/// R^{mu nu} = omega, R^{mu 5} = -R^{5 mu} = b^mu.
struct ParamTensorR {
  Mat5 r = Mat5::Zero();

  Mat4 omega() const { return r.topLeftCorner<4, 4>(); }
  Vec4 b() const { return r.block<4, 1>(0, kFifth); }
};

/// NotAntisymmetric unless omega = -omega^T to 1e-12.
ParamTensorR build_r(const Mat4& omega, const Vec4& b);
/// omega' = lambda omega lambda^T, b' = lambda (b - omega lambda^T a_lower).
ParamTensorR transform_r(const ParamTensorR& rr, const PoincareTransform& t);
/// K^-1 R K^-T with K = homogeneous_rep(t).
ParamTensorR transform_r_tensor_law(const ParamTensorR& rr, const PoincareTransform& t);

}  // namespace fivevec
