#include "fivevec/sampling.hpp"

#include <cmath>

#include "fivevec/bases.hpp"

namespace fivevec {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Vec4 Sampler::vec4(double scale) {
  Vec4 v;
  for (int i = 0; i < 4; ++i) v(i) = uniform(-scale, scale);
  return v;
}

Vec5 Sampler::vec5(double scale) {
  Vec5 v;
  for (int i = 0; i < 5; ++i) v(i) = uniform(-scale, scale);
  return v;
}

namespace {

template <int N>
Eigen::Matrix<double, N, N> plane(int i, int j, double angle, bool hyperbolic) {
  Eigen::Matrix<double, N, N> m = Eigen::Matrix<double, N, N>::Identity();
  if (hyperbolic) {
    m(i, i) = m(j, j) = std::cosh(angle);
    m(i, j) = m(j, i) = std::sinh(angle);
  } else {
    m(i, i) = m(j, j) = std::cos(angle);
    m(i, j) = -std::sin(angle);
    m(j, i) = std::sin(angle);
  }
  return m;
}

}  // namespace

Mat4 Sampler::lorentz(double max_rapidity) {
  Mat4 l = Mat4::Identity();
  for (int i = 1; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) l = plane<4>(i, j, uniform(-M_PI, M_PI), false) * l;
  for (int k = 1; k < 4; ++k) l = plane<4>(0, k, uniform(-max_rapidity, max_rapidity), true) * l;
  return l;
}

PoincareTransform Sampler::poincare(double max_rapidity, double max_shift) {
  PoincareTransform t;
  t.lambda = lorentz(max_rapidity);
  t.a = vec4(max_shift);
  return t;
}

Mat5 Sampler::o32(double max_angle) {
  const Mat5& eta = eta5();
  Mat5 o = Mat5::Identity();
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      const bool hyperbolic = eta(i, i) * eta(j, j) < 0.0;
      o = plane<5>(i, j, uniform(-max_angle, max_angle), hyperbolic) * o;
    }
  if (uniform(0.0, 1.0) < 0.5) o.col(1) *= -1.0;
  return o;
}

Sampler::MaximalSpace Sampler::maximal_space() {
  MaximalSpace s;
  const MetricH h = MetricH::eta();
  for (;;) {
    s.w = vec5();
    if (h(s.w, s.w) < 0.05) continue;
    Mat5 m;
    for (int k = 0; k < 4; ++k) m.col(k) = vec5();
    m.col(4) = s.w;
    const Eigen::JacobiSVD<Mat5> svd(m);
    if (svd.singularValues()(4) < 1e-2 * svd.singularValues()(0)) continue;
    for (int k = 0; k < 4; ++k) {
      s.u[k] = m.col(k);
      s.bivectors[k] = wedge(s.u[k], s.w);
    }
    return s;
  }
}

std::array<Bivector5, 4> Sampler::orthonormal_four_basis(Mat5* frame) {
  const Mat5 o = o32();
  if (frame) *frame = o;
  const double scale = uniform(0.5, 2.0);
  const Vec5 e5 = o.col(kFifth);
  std::array<Bivector5, 4> e;
  for (int a = 0; a < 4; ++a) {
    const Vec5 ea = Vec5(o.col(a)) + uniform(-1.0, 1.0) * e5;
    e[a] = wedge(Vec5(ea * scale), Vec5(e5 / scale));
  }
  return e;
}

Sampler::MaximalSpace Sampler::lorentzian_four_basis() {
  const MetricH h = MetricH::eta();
  for (;;) {
    const MaximalSpace s = maximal_space();
    const Mat4 g = induced_gram(s.bivectors, h);
    const Eigen::SelfAdjointEigenSolver<Mat4> es(g);
    const auto ev = es.eigenvalues();
    int pos = 0;
    int neg = 0;
    for (int i = 0; i < 4; ++i) {
      if (ev(i) > 1e-2) ++pos;
      if (ev(i) < -1e-2) ++neg;
    }
    if (pos == 1 && neg == 3) return s;
  }
}

}  // namespace fivevec
