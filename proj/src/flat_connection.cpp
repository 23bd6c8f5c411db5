#include "fivevec/flat_connection.hpp"

#include <algorithm>
#include <cmath>

namespace fivevec {

namespace {

Mat5 mat5_from(std::span<const double> s) {
  Mat5 m;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = s[static_cast<std::size_t>(r * 5 + c)];
  return m;
}

Mat4 mat4_from(std::span<const double> s) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = s[static_cast<std::size_t>(r * 4 + c)];
  return m;
}

}  // namespace

double ConnectionCoeffs::max_abs() const {
  double m = 0.0;
  for (const auto& gm : g) m = std::max(m, fivevec::max_abs(gm));
  return m;
}

void LorentzChart::validate() const {
  if (!(lambda.allFinite() && origin.allFinite() && std::isfinite(kappa))) {
    throw Error(ErrorCode::InvalidArgument, "chart has non-finite entries");
  }
  if (max_abs(Mat4(lambda.transpose() * eta4() * lambda - eta4())) > 1e-12 * std::max(1.0, max_abs(lambda) * max_abs(lambda))) {
    throw Error(ErrorCode::InvalidArgument, "chart matrix is not a Lorentz transformation");
  }
}

CompatibilityReport check_transport_compatibility(const ConnectionCoeffs& g, const FourConnection& gamma, Tolerance tol) {
  CompatibilityReport r;
  for (int mu = 0; mu < 4; ++mu) {
    const Mat5& gm = g.g[mu];
    for (int a = 0; a < 4; ++a) r.standard_residual = std::max(r.standard_residual, std::abs(gm(a, kFifth)));
    const Mat4 expected = gm.topLeftCorner<4, 4>() + gm(kFifth, kFifth) * Mat4::Identity();
    r.four_residual = std::max(r.four_residual, max_abs(Mat4(gamma.gamma[mu] - expected)));
  }
  const double bound = tol.abs + tol.rel * std::max(1.0, g.max_abs());
  r.pass = r.standard_residual <= bound && r.four_residual <= bound;
  return r;
}

ConnectionCoeffs flat_h(double kappa) {
  ConnectionCoeffs c;
  for (int mu = 0; mu < 4; ++mu)
    for (int b = 0; b < 4; ++b) c.g[mu](kFifth, b) = -kappa * eta4()(b, mu);
  return c;
}

Mat5 p_from_o_matrix(const Vec4& x, double kappa) {
  Mat5 n = Mat5::Identity();
  const Vec4 lower = eta4() * x;
  for (int a = 0; a < 4; ++a) n(kFifth, a) = kappa * lower(a);
  return n;
}

BasisChange p_from_o(const Vec4& x, double kappa) { return BasisChange(p_from_o_matrix(x, kappa)); }

Mat5 pbasis_metric(const Vec4& x, double kappa) {
  const Vec4 lower = eta4() * x;
  Mat5 h;
  h.topLeftCorner<4, 4>() = eta4() + kappa * kappa * lower * lower.transpose();
  h.block<4, 1>(0, kFifth) = kappa * lower;
  h.block<1, 4>(kFifth, 0) = kappa * lower.transpose();
  h(kFifth, kFifth) = 1.0;
  return h;
}

Vec5 transport(const Vec5& v, const Vec4& from, const Vec4& to, BasisFlag flag, double kappa) {
  if (flag == BasisFlag::P) return v;
  // Components against p = e N are N^-1 v; the P components are constant.
  const Mat5 n_from = p_from_o_matrix(from, kappa);
  const Mat5 n_to = p_from_o_matrix(to, kappa);
  const Vec5 in_p = n_from.fullPivLu().solve(v);
  return n_to * in_p;
}

ConnectionCoeffs connection_transform_constant(const ConnectionCoeffs& g, const BasisChange& l, const Mat4& lambda) {
  const Mat5& lm = l.matrix();
  const Mat5 inv = l.inverse();
  ConnectionCoeffs out;
  for (int mu = 0; mu < 4; ++mu) {
    Mat5 acc = Mat5::Zero();
    for (int nu = 0; nu < 4; ++nu) acc += (inv * g.g[nu] * lm) * lambda(nu, mu);
    out.g[mu] = acc;
  }
  return out;
}

namespace {

std::vector<ConnectionCoeffs> transform_with(const ConnectionCoeffs& g, const FieldOnGrid& l_field,
                                             const FieldOnGrid& lambda_field, FdScheme scheme) {
  std::array<FieldOnGrid, 4> dl;
  for (int nu = 0; nu < 4; ++nu) dl[nu] = partial_derivative(l_field, nu, scheme);
  std::vector<ConnectionCoeffs> out(l_field.grid.size());
  for (std::size_t s = 0; s < l_field.grid.size(); ++s) {
    const Mat5 l = mat5_from(l_field.sample(s));
    const Mat4 lambda = mat4_from(lambda_field.sample(s));
    const auto lu = l.fullPivLu();
    if (lu.rank() < 5) throw Error(ErrorCode::SingularMatrix, "basis change field is degenerate at a sample");
    const Mat5 inv = lu.inverse();
    std::array<Mat5, 4> term;
    for (int nu = 0; nu < 4; ++nu) term[nu] = inv * g.g[nu] * l + inv * mat5_from(dl[nu].sample(s));
    for (int mu = 0; mu < 4; ++mu) {
      Mat5 acc = Mat5::Zero();
      for (int nu = 0; nu < 4; ++nu) acc += term[nu] * lambda(nu, mu);
      out[s].g[mu] = acc;
    }
  }
  return out;
}

}  // namespace

ConnectionField connection_transform(const ConnectionCoeffs& g, const FieldOnGrid& l_field,
                                     const FieldOnGrid& lambda_field, FdScheme scheme, double max_truncation) {
  l_field.validate();
  lambda_field.validate();
  if (l_field.components != 25 || lambda_field.components != 16) {
    throw Error(ErrorCode::GridMismatch, "expected 25-component L and 16-component Lambda fields");
  }
  if (!(l_field.grid == lambda_field.grid)) throw Error(ErrorCode::GridMismatch, "L and Lambda fields differ in grid");
  require_resolution(l_field.grid, scheme);

  ConnectionField out;
  out.grid = l_field.grid;
  out.coeffs = transform_with(g, l_field, lambda_field, scheme);
  out.interior = interior_mask(out.grid, scheme);

  bool can_estimate = true;
  for (int a = 0; a < 4; ++a)
    if (out.grid.counts[a] > 1 && out.grid.counts[a] < min_samples(FdScheme::Central4)) can_estimate = false;
  if (can_estimate) {
    const FdScheme other = scheme == FdScheme::Central2 ? FdScheme::Central4 : FdScheme::Central2;
    const auto alt = transform_with(g, l_field, lambda_field, other);
    const auto mask = interior_mask(out.grid, FdScheme::Central4);
    for (std::size_t s = 0; s < alt.size(); ++s) {
      if (!mask[s]) continue;
      for (int mu = 0; mu < 4; ++mu)
        out.truncation_estimate = std::max(out.truncation_estimate, max_abs(Mat5(alt[s].g[mu] - out.coeffs[s].g[mu])));
    }
    if (out.truncation_estimate > max_truncation) {
      throw Error(ErrorCode::GridTooCoarse, "finite-difference truncation estimate " +
                                                std::to_string(out.truncation_estimate) + " exceeds limit");
    }
  }
  return out;
}

CovariantDerivativeField covariant_derivative(const FieldOnGrid& u, const ConnectionCoeffs& g, FdScheme scheme) {
  u.validate();
  if (u.components != 5) throw Error(ErrorCode::GridMismatch, "covariant_derivative expects a five-vector field");
  require_resolution(u.grid, scheme);
  std::array<FieldOnGrid, 4> du;
  for (int mu = 0; mu < 4; ++mu) du[mu] = partial_derivative(u, mu, scheme);
  CovariantDerivativeField out;
  out.grid = u.grid;
  out.interior = interior_mask(u.grid, scheme);
  out.values.resize(u.grid.size());
  for (std::size_t s = 0; s < u.grid.size(); ++s) {
    const auto us = u.sample(s);
    const Vec5 uv(us[0], us[1], us[2], us[3], us[4]);
    for (int mu = 0; mu < 4; ++mu) {
      const auto d = du[mu].sample(s);
      const Vec5 dv(d[0], d[1], d[2], d[3], d[4]);
      out.values[s].col(mu) = dv + g.g[mu] * uv;
    }
  }
  return out;
}

std::array<Mat5, 4> covariant_derivative_h(const Mat5& h, const std::array<Mat5, 4>& dh, const ConnectionCoeffs& g) {
  std::array<Mat5, 4> out;
  for (int mu = 0; mu < 4; ++mu) {
    // h_CB G^C_{A mu} = (G^T h)_{AB}; h_AC G^C_{B mu} = (h G)_{AB}.
    out[mu] = dh[mu] - g.g[mu].transpose() * h - h * g.g[mu];
  }
  return out;
}

double NablaHReport::max() const { return std::max({h55, ha5, hab}); }

NablaHReport nabla_h_check(const ConnectionCoeffs& g, const FieldOnGrid& h_field, double kappa,
                           const FieldOnGrid& g_field, FdScheme scheme) {
  h_field.validate();
  g_field.validate();
  if (h_field.components != 25 || g_field.components != 16) {
    throw Error(ErrorCode::GridMismatch, "expected 25-component h and 16-component g fields");
  }
  if (!(h_field.grid == g_field.grid)) throw Error(ErrorCode::GridMismatch, "h and g fields differ in grid");
  require_resolution(h_field.grid, scheme);
  std::array<FieldOnGrid, 4> dh;
  for (int mu = 0; mu < 4; ++mu) dh[mu] = partial_derivative(h_field, mu, scheme);
  const auto mask = interior_mask(h_field.grid, scheme);

  NablaHReport r;
  for (std::size_t s = 0; s < h_field.grid.size(); ++s) {
    if (!mask[s]) continue;
    const Mat5 h = mat5_from(h_field.sample(s));
    const Mat4 gm = mat4_from(g_field.sample(s));
    std::array<Mat5, 4> dhs;
    for (int mu = 0; mu < 4; ++mu) dhs[mu] = mat5_from(dh[mu].sample(s));
    const auto nh = covariant_derivative_h(h, dhs, g);
    for (int mu = 0; mu < 4; ++mu) {
      r.h55 = std::max(r.h55, std::abs(nh[mu](kFifth, kFifth)));
      for (int a = 0; a < 4; ++a) {
        r.ha5 = std::max(r.ha5, std::abs(nh[mu](a, kFifth) - kappa * gm(a, mu)));
        for (int b = 0; b < 4; ++b) {
          const double rhs = kappa * (gm(a, mu) * h(b, kFifth) + gm(b, mu) * h(a, kFifth));
          r.hab = std::max(r.hab, std::abs(h(kFifth, kFifth) * nh[mu](a, b) - rhs));
        }
      }
    }
  }
  return r;
}

double abstract_nabla_h_residual(const Vec4& u, const Vec5& v, const Vec5& w, const Vec5& e, const NablaHPoint& data,
                              Tolerance tol) {
  const MetricH h(data.h);
  const double ee = h(e, e);
  if (e.head<4>().cwiseAbs().maxCoeff() > tol.abs + tol.rel * e.norm() || !(ee > 0.0)) {
    throw Error(ErrorCode::NotDirectional, "e must be a positive-norm multiple of e_5");
  }
  double nabla_u_h = 0.0;
  for (int mu = 0; mu < 4; ++mu) nabla_u_h += u(mu) * v.dot(data.nabla_h[mu] * w);
  const double lhs = ee * nabla_u_h;

  const Basis5 frame = Basis5::reference();
  const Bivector5 u_biv = bivector_from_four(FourVector{u, {}}, frame);
  const double rhs = data.kappa * g_from_h(u_biv, wedge(v, e), h) * h(w, e) +
                     data.kappa * g_from_h(u_biv, wedge(w, e), h) * h(v, e);
  return std::abs(lhs - rhs);
}

}  // namespace fivevec
