#include <doctest.h>

#include <cmath>
#include <functional>

#include "fivevec/flat_connection.hpp"
#include "fivevec/sampling.hpp"
#include "support.hpp"

using namespace fivevec;

namespace {

// RK4 integration of dv/ds = -G_mu v dx^mu/ds along x(s), s in [0,1].
Vec5 rk4_transport(const Vec5& v0, const ConnectionCoeffs& g, const std::function<Vec4(double)>& dxds, int steps) {
  auto rhs = [&](double s, const Vec5& v) {
    const Vec4 d = dxds(s);
    Vec5 out = Vec5::Zero();
    for (int mu = 0; mu < 4; ++mu) out -= d(mu) * (g.g[mu] * v);
    return out;
  };
  Vec5 v = v0;
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double s = i * h;
    const Vec5 k1 = rhs(s, v);
    const Vec5 k2 = rhs(s + h / 2, v + h / 2 * k1);
    const Vec5 k3 = rhs(s + h / 2, v + h / 2 * k2);
    const Vec5 k4 = rhs(s + h, v + h * k3);
    v += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return v;
}

FieldOnGrid mat_field(const Grid4& grid, int n, const std::function<Eigen::MatrixXd(const Vec4&)>& fn) {
  return sample_field(grid, n * n, [&](const Vec4& x, std::span<double> out) {
    const Eigen::MatrixXd m = fn(x);
    for (int i = 0; i < n * n; ++i) out[static_cast<std::size_t>(i)] = m(i / n, i % n);
  });
}

}  // namespace

TEST_CASE("compatibility with four-vector transport") {
  const ConnectionCoeffs g = flat_h(1.0);
  CHECK(check_transport_compatibility(g, FourConnection{}).pass);

  ConnectionCoeffs bad = g;
  bad.at(2, 5, 1) = 0.3;
  const auto r = check_transport_compatibility(bad, FourConnection{});
  CHECK_FALSE(r.pass);
  CHECK(r.standard_residual == 0.3);

  // G^5_{5 mu} shifts the four-vector connection by a multiple of delta.
  ConnectionCoeffs shifted = g;
  FourConnection gamma;
  for (int mu = 0; mu < 4; ++mu) {
    shifted.at(5, 5, mu) = 0.2 * (mu + 1);
    gamma.gamma[mu] = 0.2 * (mu + 1) * Mat4::Identity();
  }
  CHECK(check_transport_compatibility(shifted, gamma).pass);
  CHECK_FALSE(check_transport_compatibility(shifted, FourConnection{}).pass);
}

TEST_CASE("flat coefficients in the orthonormal basis") {
  const ConnectionCoeffs g = flat_h(1.0);
  for (int mu = 0; mu < 4; ++mu)
    for (int a : kLabels)
      for (int b : kLabels) {
        const double expect = (a == 5 && b != 5) ? -eta4()(b, mu) : 0.0;
        CHECK(g.at(a, b, mu) == expect);
      }
  CHECK(flat_h(0.0).max_abs() == 0.0);
  CHECK(flat_h(2.0).at(5, 1, 1) == 2.0);
}

TEST_CASE("flat coefficients are Lorentz invariant") {
  Sampler s(59);
  const ConnectionCoeffs g = flat_h(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat4 lam = s.lorentz();
    Mat5 l = Mat5::Identity();
    l.topLeftCorner<4, 4>() = lam;
    const ConnectionCoeffs gp = connection_transform_constant(g, BasisChange(l), lam);
    for (int mu = 0; mu < 4; ++mu) CHECK(max_abs(Mat5(gp.g[mu] - g.g[mu])) < 1e-12);
  }
  // A non-Lorentz block does not preserve them.
  Mat4 stretch = Mat4::Identity();
  stretch(1, 1) = 2.0;
  Mat5 l = Mat5::Identity();
  l.topLeftCorner<4, 4>() = stretch;
  const ConnectionCoeffs gp = connection_transform_constant(g, BasisChange(l), stretch);
  CHECK(std::abs(gp.at(5, 1, 1) - g.at(5, 1, 1)) > 1.0);
}

TEST_CASE("self-parallel basis") {
  const Vec4 x(1, 2, 0, 0);
  const Mat5 n = p_from_o_matrix(x, 1.0);
  CHECK(n(kFifth, 0) == 1.0);
  CHECK(n(kFifth, 1) == -2.0);
  CHECK(n.topLeftCorner<4, 4>() == Mat4::Identity());
  CHECK(n(kFifth, kFifth) == 1.0);

  Sampler s(61);
  for (double kappa : {1.0, 0.5, -2.0}) {
    const Vec4 y = s.vec4();
    const Mat5 h = pbasis_metric(y, kappa);
    const Mat5 m = p_from_o_matrix(y, kappa);
    CHECK(max_abs(Mat5(h - m.transpose() * eta5() * m)) < 1e-13);
    const Vec4 yl = eta4() * y;
    CHECK(h(0, 1) == doctest::Approx(kappa * kappa * yl(0) * yl(1)));
    CHECK(h(2, kFifth) == doctest::Approx(kappa * yl(2)));
    CHECK(h(kFifth, kFifth) == 1.0);
  }
  // At kappa = 0 the two bases coincide.
  CHECK(p_from_o_matrix(Vec4(3, 1, 4, 1), 0.0) == Mat5::Identity());
}

TEST_CASE("the self-parallel basis has vanishing coefficients") {
  const Grid4 grid = Grid4::cube(5, -1.0, 1.0, {true, true, true, true});
  for (double kappa : {1.0, 0.75}) {
    const FieldOnGrid l = mat_field(grid, 5, [&](const Vec4& x) { return Eigen::MatrixXd(p_from_o_matrix(x, kappa)); });
    const FieldOnGrid lam = mat_field(grid, 4, [](const Vec4&) { return Eigen::MatrixXd(Mat4::Identity()); });
    const ConnectionField cf = connection_transform(flat_h(kappa), l, lam, FdScheme::Central2);
    double worst = 0.0;
    for (const auto& c : cf.coeffs) worst = std::max(worst, c.max_abs());
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("connection transform input checks") {
  const Grid4 grid = Grid4::cube(9, -1.0, 1.0, {true, false, false, false});
  const FieldOnGrid l = mat_field(grid, 5, [](const Vec4& x) {
    Mat5 m = Mat5::Identity();
    m(0, 0) = 2.0 + std::sin(3.0 * x(0));
    return Eigen::MatrixXd(m);
  });
  const FieldOnGrid lam = mat_field(grid, 4, [](const Vec4&) { return Eigen::MatrixXd(Mat4::Identity()); });
  CHECK_CODE(connection_transform(flat_h(1.0), l, lam, FdScheme::Central2, 1e-12), GridTooCoarse);
  CHECK_CODE(connection_transform(flat_h(1.0), lam, lam, FdScheme::Central2), GridMismatch);
  const Grid4 coarse = Grid4::cube(2, -1.0, 1.0, {true, false, false, false});
  const FieldOnGrid lc = mat_field(coarse, 5, [](const Vec4&) { return Eigen::MatrixXd(Mat5::Identity()); });
  const FieldOnGrid lamc = mat_field(coarse, 4, [](const Vec4&) { return Eigen::MatrixXd(Mat4::Identity()); });
  CHECK_CODE(connection_transform(flat_h(1.0), lc, lamc, FdScheme::Central2), GridTooCoarse);
}

TEST_CASE("parallel transport") {
  const double t = 0.7;
  const Vec5 e0 = Vec5::Unit(0);
  const Vec5 moved = transport(e0, Vec4::Zero(), Vec4(t, 0, 0, 0), BasisFlag::O, 1.0);
  const Vec5 oracle = rk4_transport(e0, flat_h(1.0), [&](double) { return Vec4(t, 0, 0, 0); }, 100);
  CHECK(moved(kFifth) == doctest::Approx(t));
  CHECK(max_abs(Vec5(moved - oracle)) < 1e-12);

  // e5 is parallel in the O basis.
  const Vec5 e5 = Vec5::Unit(kFifth);
  CHECK(transport(e5, Vec4(1, 2, 3, 4), Vec4(-1, 0, 2, 1), BasisFlag::O, 1.0) == e5);
  // P-basis components are constant.
  const Vec5 v(1, 2, 3, 4, 5);
  CHECK(transport(v, Vec4::Zero(), Vec4::Ones(), BasisFlag::P, 1.0) == v);

  Sampler s(67);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec5 v0 = s.vec5();
    const Vec4 a = s.vec4(), b = s.vec4(), c = s.vec4();
    const double kappa = s.uniform(-2.0, 2.0);
    // Curved path from a to b: straight line plus a bump in x^2.
    auto path_velocity = [&](double u) {
      Vec4 d = b - a;
      d(2) += c(2) * std::cos(M_PI * u) * M_PI;
      return d;
    };
    const Vec5 along = rk4_transport(v0, flat_h(kappa), path_velocity, 400);
    const Vec5 direct = transport(v0, a, b, BasisFlag::O, kappa);
    CHECK(max_abs(Vec5(along - direct)) < 1e-9);
    const Vec5 two_leg = transport(transport(v0, a, c, BasisFlag::O, kappa), c, b, BasisFlag::O, kappa);
    CHECK(max_abs(Vec5(two_leg - direct)) < 1e-12);
  }
}

TEST_CASE("covariant derivative of five-vector fields") {
  // All four axes active: the parallel field below depends on every coordinate.
  const Grid4 grid = Grid4::cube(5, -1.0, 1.0, {true, true, true, true});
  const ConnectionCoeffs g = flat_h(1.0);

  // Constant O components of e0: only the connection term survives.
  const FieldOnGrid u = sample_field(grid, 5, [](const Vec4&, std::span<double> out) {
    for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)] = i == 0 ? 1.0 : 0.0;
  });
  const auto d = covariant_derivative(u, g, FdScheme::Central2);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    CHECK(d.values[s](kFifth, 0) == -1.0);
    CHECK(d.values[s](kFifth, 1) == 0.0);
    CHECK(d.values[s].topRows<4>().isZero());
  }

  // A field that is parallel: O components of a fixed P-basis vector.
  const Vec5 c(0.5, -1, 2, 0.25, 3);
  const FieldOnGrid par = sample_field(grid, 5, [&](const Vec4& x, std::span<double> out) {
    const Vec5 v = p_from_o_matrix(x, 1.0) * c;
    for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)] = v(i);
  });
  const auto dp = covariant_derivative(par, g, FdScheme::Central2);
  for (const auto& m : dp.values) CHECK(max_abs(m) < 1e-13);

  CHECK_CODE(covariant_derivative(FieldOnGrid(grid, 4), g, FdScheme::Central2), GridMismatch);
}

TEST_CASE("covariant derivative of h") {
  for (double kappa : {1.0, -0.5}) {
    std::array<Mat5, 4> zero{Mat5::Zero(), Mat5::Zero(), Mat5::Zero(), Mat5::Zero()};
    const auto nh = covariant_derivative_h(eta5(), zero, flat_h(kappa));
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(nh[mu](kFifth, kFifth) == 0.0);
      CHECK(nh[mu].topLeftCorner<4, 4>().isZero());
      for (int a = 0; a < 4; ++a) {
        CHECK(nh[mu](a, kFifth) == kappa * eta4()(a, mu));
        CHECK(nh[mu](kFifth, a) == kappa * eta4()(a, mu));
      }
    }
  }

  const Grid4 grid = Grid4::cube(5, -1.0, 1.0, {true, true, true, true});
  const FieldOnGrid g16 = mat_field(grid, 4, [](const Vec4&) { return Eigen::MatrixXd(eta4()); });
  const FieldOnGrid ho = mat_field(grid, 5, [](const Vec4&) { return Eigen::MatrixXd(eta5()); });
  CHECK(nabla_h_check(flat_h(1.0), ho, 1.0, g16, FdScheme::Central2).max() < 1e-14);
  // The wrong constant is caught.
  CHECK(nabla_h_check(flat_h(1.0), ho, 2.0, g16, FdScheme::Central2).max() == doctest::Approx(1.0));

  FieldOnGrid hp = mat_field(grid, 5, [](const Vec4& x) { return Eigen::MatrixXd(pbasis_metric(x, 1.0)); });
  CHECK(nabla_h_check(ConnectionCoeffs{}, hp, 1.0, g16, FdScheme::Central2).max() < 1e-13);
  CHECK_CODE(nabla_h_check(ConnectionCoeffs{}, hp, 1.0, ho, FdScheme::Central2), GridMismatch);
}

TEST_CASE("abstract identity for nabla h") {
  Sampler s(71);
  std::array<Mat5, 4> zero{Mat5::Zero(), Mat5::Zero(), Mat5::Zero(), Mat5::Zero()};
  for (double kappa : {1.0, 0.0, 1.5}) {
    const NablaHPoint p{eta5(), covariant_derivative_h(eta5(), zero, flat_h(kappa)), kappa};
    for (int trial = 0; trial < 20; ++trial) {
      const Vec4 u = s.vec4();
      const Vec5 v = s.vec5(), w = s.vec5();
      CHECK(abstract_nabla_h_residual(u, v, w, Vec5::Unit(kFifth), p) < 1e-12);
      CHECK(abstract_nabla_h_residual(u, v, w, 3.0 * Vec5::Unit(kFifth), p) < 1e-11);
    }
  }
  // A wrong derivative is detected.
  NablaHPoint wrong{eta5(), zero, 1.0};
  CHECK(abstract_nabla_h_residual(Vec4(1, 0, 0, 0), Vec5::Unit(0), Vec5::Unit(kFifth), Vec5::Unit(kFifth), wrong) ==
        doctest::Approx(1.0));

  const NablaHPoint p{};
  CHECK_CODE(abstract_nabla_h_residual(Vec4::Ones(), Vec5::Ones(), Vec5::Ones(), Vec5(Vec5::Unit(0) + Vec5::Unit(kFifth)), p),
             NotDirectional);
  CHECK_CODE(abstract_nabla_h_residual(Vec4::Ones(), Vec5::Ones(), Vec5::Ones(), Vec5::Zero(), p), NotDirectional);
}

TEST_CASE("chart validation") {
  LorentzChart c;
  CHECK_NOTHROW(c.validate());
  c.lambda(0, 0) = 2.0;
  CHECK_CODE(c.validate(), InvalidArgument);
}
