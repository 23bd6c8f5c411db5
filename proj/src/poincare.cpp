#include "fivevec/poincare.hpp"

#include <algorithm>
#include <cmath>

namespace fivevec {

void PoincareTransform::validate() const {
  if (!lambda.allFinite() || !a.allFinite()) throw Error(ErrorCode::InvalidArgument, "transform has non-finite entries");
  const double scale = std::max(1.0, max_abs(lambda) * max_abs(lambda));
  if (max_abs(Mat4(lambda.transpose() * eta4() * lambda - eta4())) > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, "lambda is not a Lorentz transformation");
  }
}

PoincareTransform PoincareTransform::translation(const Vec4& a) { return {Mat4::Identity(), a}; }
PoincareTransform PoincareTransform::lorentz(const Mat4& lambda) { return {lambda, Vec4::Zero()}; }

PoincareTransform compose(const PoincareTransform& t1, const PoincareTransform& t2) {
  return {t1.lambda * t2.lambda, t1.lambda * t2.a + t1.a};
}

namespace {

// Lorentz inverse eta lambda^T eta; exact up to rounding for valid lambda.
Mat4 lorentz_inverse(const Mat4& lambda) { return eta4() * lambda.transpose() * eta4(); }

}  // namespace

PoincareTransform inverse(const PoincareTransform& t) {
  const Mat4 inv = lorentz_inverse(t.lambda);
  return {inv, -inv * t.a};
}

Mat5 homogeneous_rep(const PoincareTransform& t, double kappa) {
  Mat5 l = Mat5::Zero();
  l.topLeftCorner<4, 4>() = lorentz_inverse(t.lambda);
  l.block<1, 4>(kFifth, 0) = kappa * (eta4() * t.a).transpose();
  l(kFifth, kFifth) = 1.0;
  return l;
}

Mat5 o_basis_change(const PoincareTransform& t) {
  Mat5 l = Mat5::Identity();
  l.topLeftCorner<4, 4>() = lorentz_inverse(t.lambda);
  return l;
}

Vec5 transform_vector_components(const Vec5& v, const Mat5& k) { return k.fullPivLu().solve(v); }

RowVec5 transform_form_components(const RowVec5& w, const Mat5& k) { return w * k; }

FiveVector transform_components_o(const FiveVector& v, const PoincareTransform& t) {
  FiveVector out = v;
  out.components.head<4>() = t.lambda * v.components.head<4>();
  return out;
}

FiveForm transform_components_o(const FiveForm& w, const PoincareTransform& t) {
  FiveForm out = w;
  out.components.head<4>() = (w.components.head<4>().transpose() * lorentz_inverse(t.lambda)).transpose();
  return out;
}

FiveVector transform_components_p(const FiveVector& v, const PoincareTransform& t, double kappa) {
  FiveVector out = v;
  const Vec4 rotated = t.lambda * v.components.head<4>();
  const Vec4 a_lower = eta4() * t.a;
  out.components.head<4>() = rotated;
  out.components(kFifth) = v.components(kFifth) - kappa * a_lower.dot(rotated);
  return out;
}

FiveForm transform_components_p(const FiveForm& w, const PoincareTransform& t, double kappa) {
  FiveForm out = w;
  const Vec4 a_lower = eta4() * t.a;
  out.components.head<4>() =
      (w.components.head<4>().transpose() * lorentz_inverse(t.lambda)).transpose() + kappa * a_lower * w.components(kFifth);
  return out;
}

CovCoordForm build_cov_coord_form(const LorentzChart& chart, const Vec4& x) {
  if (chart.kappa == 0.0) throw Error(ErrorCode::InvalidArgument, "covariant-coordinate form needs kappa != 0");
  CovCoordForm f;
  f.p_dual.head<4>() = eta4() * x;
  f.p_dual(kFifth) = 1.0 / chart.kappa;
  // q~^a = o~^a, q~^5 = o~^5 - kappa x_a o~^a, i.e. O-dual components are
  // the P-dual ones times N^-1.
  const Mat5 n = p_from_o_matrix(x, chart.kappa);
  f.o_dual = (f.p_dual.transpose() * n.inverse()).transpose();
  return f;
}

NablaCovCoord nabla_cov_coord(const LorentzChart& chart, const Vec4& x) {
  if (chart.kappa == 0.0) throw Error(ErrorCode::InvalidArgument, "covariant-coordinate form needs kappa != 0");
  NablaCovCoord r;
  r.p_route.setZero();
  // d_mu x_a = eta_{a mu}; the fifth component is constant.
  r.p_route.leftCols<4>() = eta4();

  // O basis: x~ = o~^5 / kappa, so w_{A;mu} = -w_B G^B_{A mu} = -G^5_{A mu} / kappa.
  const ConnectionCoeffs g = flat_h(chart.kappa);
  Eigen::Matrix<double, 4, 5> o_components;
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 5; ++a) o_components(mu, a) = -g.g[mu](kFifth, a) / chart.kappa;
  // Re-express on q~: components w_P = w_O N.
  const Mat5 n = p_from_o_matrix(x, chart.kappa);
  r.o_route = o_components * n;
  return r;
}

ParamTensorT ParamTensorT::from(const Mat4& l, const RowVec4& b) {
  ParamTensorT out;
  out.t.topLeftCorner<4, 4>() = l;
  out.t.block<1, 4>(kFifth, 0) = b;
  return out;
}

ParamTensorT transform_t(const ParamTensorT& tt, const PoincareTransform& t) {
  const Mat4 inv = lorentz_inverse(t.lambda);
  const RowVec4 a_lower = (eta4() * t.a).transpose();
  const Mat4 l_new = t.lambda * tt.l() * inv;
  const RowVec4 b_new = tt.b() * inv + a_lower - a_lower * l_new;
  return ParamTensorT::from(l_new, b_new);
}

ParamTensorT transform_t_tensor_law(const ParamTensorT& tt, const PoincareTransform& t) {
  const Mat5 k = homogeneous_rep(t);
  ParamTensorT out;
  out.t = k.fullPivLu().solve(tt.t) * k;
  return out;
}

ParamTensorR build_r(const Mat4& omega, const Vec4& b) {
  if (max_abs(Mat4(omega + omega.transpose())) > 1e-12 * std::max(1.0, max_abs(omega))) {
    throw Error(ErrorCode::NotAntisymmetric, "omega must be antisymmetric");
  }
  ParamTensorR out;
  out.r.topLeftCorner<4, 4>() = 0.5 * (omega - omega.transpose());
  out.r.block<4, 1>(0, kFifth) = b;
  out.r.block<1, 4>(kFifth, 0) = -b.transpose();
  return out;
}

ParamTensorR transform_r(const ParamTensorR& rr, const PoincareTransform& t) {
  const Vec4 a_lower = eta4() * t.a;
  const Mat4 omega = rr.omega();
  const Mat4 omega_new = t.lambda * omega * t.lambda.transpose();
  const Vec4 b_new = t.lambda * (rr.b() - omega * (t.lambda.transpose() * a_lower));
  return build_r(omega_new, b_new);
}

ParamTensorR transform_r_tensor_law(const ParamTensorR& rr, const PoincareTransform& t) {
  const Mat5 kinv = homogeneous_rep(t).inverse();
  ParamTensorR out;
  out.r = kinv * rr.r * kinv.transpose();
  return out;
}

}  // namespace fivevec
