#include "fivevec/stress_energy.hpp"

#include <algorithm>
#include <cmath>

namespace fivevec {

FieldOnGrid MTensorField::to_field() const {
  FieldOnGrid f(grid, 100, basis);
  for (std::size_t s = 0; s < m.size(); ++s) {
    auto dst = f.sample(s);
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) dst[static_cast<std::size_t>(mu * 25 + a * 5 + b)] = m[s][mu](a, b);
  }
  return f;
}

MTensorField MTensorField::from_field(const FieldOnGrid& f, double kappa) {
  f.validate();
  if (f.components != 100) throw Error(ErrorCode::KindMismatch, "M-tensor field needs 100 components per sample");
  MTensorField out;
  out.grid = f.grid;
  out.basis = f.basis;
  out.kappa = kappa;
  out.m.resize(f.grid.size());
  for (std::size_t s = 0; s < out.m.size(); ++s) {
    const auto src = f.sample(s);
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) out.m[s][mu](a, b) = src[static_cast<std::size_t>(mu * 25 + a * 5 + b)];
  }
  return out;
}

MSample assemble_sample(const Mat4& theta, const std::array<Mat4, 4>& sigma, const Vec4& x, double kappa) {
  if (kappa == 0.0) throw Error(ErrorCode::InvalidArgument, "assembly needs kappa != 0");
  const Vec4 xl = eta4() * x;
  MSample out;
  for (int mu = 0; mu < 4; ++mu) {
    Mat5 m = Mat5::Zero();
    const RowVec4 th = theta.row(mu);
    m.topLeftCorner<4, 4>() = xl * th - th.transpose() * xl.transpose() + sigma[mu];
    m.block<1, 4>(kFifth, 0) = th / kappa;
    m.block<4, 1>(0, kFifth) = -th.transpose() / kappa;
    out[mu] = m;
  }
  return out;
}

MTensorField assemble_m_p(const ThetaField& theta, const SigmaField& sigma, const LorentzChart& chart) {
  if (!(theta.grid == sigma.grid)) throw Error(ErrorCode::GridMismatch, "Theta and Sigma are sampled on different grids");
  theta.grid.validate();
  if (theta.theta.size() != theta.grid.size() || sigma.sigma.size() != sigma.grid.size()) {
    throw Error(ErrorCode::GridMismatch, "sample count does not match grid");
  }
  MTensorField out;
  out.grid = theta.grid;
  out.basis = BasisFlag::P;
  out.kappa = chart.kappa;
  out.m.resize(theta.grid.size());
  for (std::size_t s = 0; s < out.m.size(); ++s) {
    out.m[s] = assemble_sample(theta.theta[s], sigma.sigma[s], theta.grid.point(s), chart.kappa);
  }
  return out;
}

Mat4 theta_of(const MSample& m, double kappa) {
  Mat4 th;
  for (int mu = 0; mu < 4; ++mu) th.row(mu) = kappa * m[mu].block<1, 4>(kFifth, 0);
  return th;
}

MSample p_to_o_sample(const MSample& m, const Vec4& x, double kappa) {
  const Mat5 ninv = p_from_o_matrix(x, kappa).inverse();
  MSample out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = ninv.transpose() * m[mu] * ninv;
  return out;
}

MSample o_to_p_sample(const MSample& m, const Vec4& x, double kappa) {
  const Mat5 n = p_from_o_matrix(x, kappa);
  MSample out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = n.transpose() * m[mu] * n;
  return out;
}

namespace {

MTensorField convert(const MTensorField& m, BasisFlag target) {
  if (m.basis == target) return m;
  if (m.basis == BasisFlag::Regular || target == BasisFlag::Regular) {
    throw Error(ErrorCode::KindMismatch, "conversion is defined between O and P bases only");
  }
  MTensorField out = m;
  out.basis = target;
  for (std::size_t s = 0; s < m.m.size(); ++s) {
    const Vec4 x = m.grid.point(s);
    out.m[s] = target == BasisFlag::O ? p_to_o_sample(m.m[s], x, m.kappa) : o_to_p_sample(m.m[s], x, m.kappa);
  }
  return out;
}

}  // namespace

MTensorField to_o_basis(const MTensorField& m) { return convert(m, BasisFlag::O); }
MTensorField to_p_basis(const MTensorField& m) { return convert(m, BasisFlag::P); }

MSample transform_m_sample(const MSample& m, const PoincareTransform& t, double kappa) {
  const Mat4 inv = t.lambda.inverse();
  const Vec4 al = eta4() * t.a;
  const Mat4 theta = theta_of(m, kappa);
  std::array<Mat4, 4> ang;
  for (int mu = 0; mu < 4; ++mu) ang[mu] = m[mu].topLeftCorner<4, 4>();

  // Theta'^mu_a = lambda^mu_nu Theta^nu_b (lambda^-1)^b_a
  const Mat4 theta_new = t.lambda * theta * inv;
  MSample out;
  for (int mu = 0; mu < 4; ++mu) {
    Mat4 rotated = Mat4::Zero();
    for (int nu = 0; nu < 4; ++nu) rotated += t.lambda(mu, nu) * (inv.transpose() * ang[nu] * inv);
    const RowVec4 th = theta_new.row(mu);
    const Mat4 shift = al * th - th.transpose() * al.transpose();
    Mat5 mm = Mat5::Zero();
    mm.topLeftCorner<4, 4>() = rotated + shift;
    mm.block<1, 4>(kFifth, 0) = th / kappa;
    mm.block<4, 1>(0, kFifth) = -th.transpose() / kappa;
    out[mu] = mm;
  }
  return out;
}

MSample transform_m_sample_tensor_law(const MSample& m, const PoincareTransform& t, double kappa) {
  const Mat5 k = homogeneous_rep(t, kappa);
  MSample out;
  for (int mu = 0; mu < 4; ++mu) {
    Mat5 acc = Mat5::Zero();
    for (int nu = 0; nu < 4; ++nu) acc += t.lambda(mu, nu) * m[nu];
    out[mu] = k.transpose() * acc * k;
  }
  return out;
}

MTensorField transform_m(const MTensorField& m, const PoincareTransform& t) {
  MTensorField out = m;
  if (m.basis == BasisFlag::P) {
    for (std::size_t s = 0; s < m.m.size(); ++s) out.m[s] = transform_m_sample(m.m[s], t, m.kappa);
    return out;
  }
  if (m.basis != BasisFlag::O) throw Error(ErrorCode::KindMismatch, "transform_m acts on O- or P-basis fields");
  const Mat5 k = o_basis_change(t);
  for (std::size_t s = 0; s < m.m.size(); ++s) {
    for (int mu = 0; mu < 4; ++mu) {
      Mat5 acc = Mat5::Zero();
      for (int nu = 0; nu < 4; ++nu) acc += t.lambda(mu, nu) * m.m[s][nu];
      out.m[s][mu] = k.transpose() * acc * k;
    }
  }
  return out;
}

ConservationReport conservation_check(const MTensorField& m, FdScheme scheme) {
  if (m.basis == BasisFlag::Regular) throw Error(ErrorCode::KindMismatch, "conservation check supports O and P bases");
  const FieldOnGrid f = m.to_field();
  f.validate();
  require_resolution(m.grid, scheme);
  std::array<FieldOnGrid, 4> d;
  for (int mu = 0; mu < 4; ++mu) d[mu] = partial_derivative(f, mu, scheme);
  const ConnectionCoeffs g = m.basis == BasisFlag::O ? flat_h(m.kappa) : ConnectionCoeffs{};

  ConservationReport r;
  r.interior = interior_mask(m.grid, scheme);
  r.divergence.assign(m.grid.size(), Mat5::Zero());
  for (std::size_t s = 0; s < m.grid.size(); ++s) {
    if (!r.interior[s]) continue;
    ++r.interior_samples;
    Mat5 div = Mat5::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      const auto ds = d[mu].sample(s);
      // Only the mu-th block of the mu-derivative enters the divergence.
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) div(a, b) += ds[static_cast<std::size_t>(mu * 25 + a * 5 + b)];
      // - M^mu_{CB} G^C_{A mu} - M^mu_{AC} G^C_{B mu}
      div -= g.g[mu].transpose() * m.m[s][mu] + m.m[s][mu] * g.g[mu];
    }
    r.divergence[s] = div;
    for (int a = 0; a < 4; ++a) {
      r.momentum = std::max(r.momentum, std::abs(div(kFifth, a)));
      for (int b = 0; b < 4; ++b) r.angular = std::max(r.angular, std::abs(div(a, b)));
    }
  }
  return r;
}

Mat4 plane_wave_theta(const Vec4& k_upper, const Vec4& x) {
  const Vec4 k_lower = eta4() * k_upper;
  const double phase = k_lower.dot(x);
  const double s = std::sin(phase);
  // d_a phi = -k_a sin, d^mu phi = -k^mu sin
  const Vec4 d_lower = -k_lower * s;
  const Vec4 d_upper = -k_upper * s;
  const double dphi2 = d_lower.dot(d_upper);
  return d_upper * d_lower.transpose() - 0.5 * dphi2 * Mat4::Identity();
}

ThetaField sample_plane_wave(const Grid4& grid, const Vec4& k_upper) {
  grid.validate();
  ThetaField f;
  f.grid = grid;
  f.theta.resize(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) f.theta[s] = plane_wave_theta(k_upper, grid.point(s));
  return f;
}

ThetaField constant_theta(const Grid4& grid, const Mat4& theta) {
  grid.validate();
  return ThetaField{grid, std::vector<Mat4>(grid.size(), theta)};
}

SigmaField zero_sigma(const Grid4& grid) {
  grid.validate();
  std::array<Mat4, 4> z{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
  return SigmaField{grid, std::vector<std::array<Mat4, 4>>(grid.size(), z)};
}

}  // namespace fivevec
