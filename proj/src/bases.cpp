#include "fivevec/bases.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fivevec {

BasisChange::BasisChange(const Mat5& l) : l_(l) {
  if (!all_finite(l)) throw Error(ErrorCode::InvalidArgument, "basis change has non-finite entries");
  if (l.fullPivLu().rank() < 5) throw Error(ErrorCode::SingularMatrix, "basis change is degenerate");
}

BasisChange BasisChange::u_transform(double a) {
  if (a == 0.0) throw Error(ErrorCode::InvalidArgument, "U-transformation requires a != 0");
  Mat5 l = Mat5::Zero();
  l.topLeftCorner<4, 4>() = Mat4::Identity() / a;
  l(kFifth, kFifth) = a;
  return BasisChange(l);
}

BasisChange BasisChange::p_transform(const RowVec4& p) {
  Mat5 l = Mat5::Identity();
  l.block<1, 4>(kFifth, 0) = p;
  return BasisChange(l);
}

BasisChange BasisChange::m_transform(const Mat4& t) {
  Mat5 l = Mat5::Identity();
  l.topLeftCorner<4, 4>() = t;
  return BasisChange(l);
}

Mat5 BasisChange::inverse() const { return l_.fullPivLu().inverse(); }

BasisChange UPMDecomposition::reassemble() const {
  return BasisChange::u_transform(a).then(BasisChange::p_transform(p)).then(BasisChange::m_transform(t));
}

double OrientationTensor::component(const std::array<int, 5>& slots) const {
  // Parity by counting inversions; repeated slots give zero.
  int inversions = 0;
  for (int i = 0; i < 5; ++i) {
    if (slots[i] < 0 || slots[i] > 4) throw Error(ErrorCode::InvalidArgument, "slot out of range");
    for (int j = i + 1; j < 5; ++j) {
      if (slots[i] == slots[j]) return 0.0;
      if (slots[i] > slots[j]) ++inversions;
    }
  }
  return (inversions % 2 == 0 ? 1.0 : -1.0) * sign;
}

bool is_standard_change(const BasisChange& l, Tolerance tol) {
  const auto& m = l.matrix();
  for (int a = 0; a < 4; ++a)
    if (std::abs(m(a, kFifth)) > tol.abs + tol.rel * max_abs(m)) return false;
  return true;
}

Mat4 induced_lambda(const BasisChange& l, Tolerance tol) {
  if (!is_standard_change(l, tol)) throw Error(ErrorCode::NotStandard, "L^a_5 must vanish");
  const auto& m = l.matrix();
  return m(kFifth, kFifth) * m.topLeftCorner<4, 4>();
}

Mat4 induced_lambda_from_bivectors(const BasisChange& l) {
  const auto& m = l.matrix();
  Mat4 lambda;
  for (int mu = 0; mu < 4; ++mu) {
    const Bivector5 e_mu = wedge(Vec5(m.col(mu)), Vec5(m.col(kFifth)));
    // Coefficient of E_nu = e_nu ^ e_5 is the (nu,5) component.
    for (int nu = 0; nu < 4; ++nu) lambda(nu, mu) = e_mu.matrix()(nu, kFifth);
  }
  return lambda;
}

UPMDecomposition decompose_upm(const BasisChange& l, Tolerance tol) {
  if (!is_standard_change(l, tol)) throw Error(ErrorCode::NotStandard, "L^a_5 must vanish");
  const auto& m = l.matrix();
  UPMDecomposition d;
  d.a = m(kFifth, kFifth);
  d.t = d.a * m.topLeftCorner<4, 4>();
  auto lu = d.t.fullPivLu();
  if (lu.rank() < 4) throw Error(ErrorCode::SingularBlock, "four-block of L is singular");
  // Bottom row of U P M is a * p * t.
  d.p = (m.block<1, 4>(kFifth, 0) / d.a) * lu.inverse();
  return d;
}

BasisFlags classify_basis(const Mat5& vectors, const MetricH& h, const Vec5& directional, Tolerance tol) {
  BasisFlags f;
  const Vec5 e5 = vectors.col(kFifth);
  // e_5 parallel to the directional vector: e_5 ^ w = 0.
  const double para = max_abs(wedge(e5, directional).matrix());
  f.standard = para <= tol.abs + tol.rel * e5.norm() * directional.norm();
  const Mat5 gram = vectors.transpose() * h.matrix() * vectors;
  const double scale = std::max(1.0, max_abs(gram));
  const double bound = tol.abs + tol.rel * scale;
  bool regular = std::abs(gram(kFifth, kFifth) - 1.0) <= bound;
  for (int a = 0; a < 4; ++a) regular = regular && std::abs(gram(a, kFifth)) <= bound;
  f.regular = f.standard && regular;
  f.orthonormal = f.standard && max_abs(Mat5(gram - eta5())) <= bound;
  return f;
}

bool is_regular(const Basis5& basis, const MetricH& h, Tolerance tol) {
  const Mat5 gram = basis.gram(h);
  const double bound = tol.abs + tol.rel * std::max(1.0, max_abs(gram));
  if (std::abs(gram(kFifth, kFifth) - 1.0) > bound) return false;
  for (int a = 0; a < 4; ++a)
    if (std::abs(gram(a, kFifth)) > bound) return false;
  return true;
}

int orientation_sign(const Basis5& basis, const OrientationTensor& eps) {
  const double det = basis.matrix().determinant();
  return (det > 0.0 ? 1 : -1) * (eps.sign > 0 ? 1 : -1);
}

Mat4 induced_gram(const std::array<Bivector5, 4>& e, const MetricH& h) {
  Mat4 g;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) g(a, b) = g_from_h(e[a], e[b], h);
  return g;
}

namespace {

FiveVector common_direction(const std::array<Bivector5, 4>& e, Tolerance tol) {
  try {
    return directional_vector(std::span<const Bivector5>(e), tol);
  } catch (const Error& err) {
    throw Error(ErrorCode::NoCommonDirection, err.what());
  }
}

// Proof construction: E_a = e'_a ^ e'_5 solved by minimum-norm least
// squares, then normalised against h.
Mat5 orthonormal_from(const std::array<Bivector5, 4>& e, const MetricH& h, const Vec5& w, Tolerance tol) {
  const Eigen::Matrix<double, 10, 5> map = [&] {
    // u -> u ^ w, packed components.
    Eigen::Matrix<double, 10, 5> m;
    for (int i = 0; i < 5; ++i) m.col(i) = wedge(Vec5(Vec5::Unit(i)), w).packed();
    return m;
  }();
  const auto pinv = map.completeOrthogonalDecomposition();
  Mat5 primed;
  primed.col(kFifth) = w;
  for (int a = 0; a < 4; ++a) {
    const Eigen::Matrix<double, 10, 1> rhs = e[a].packed();
    const Vec5 u = pinv.solve(rhs);
    if (max_abs(Eigen::MatrixXd(map * u - rhs)) > tol.abs + tol.rel * max_abs(Eigen::MatrixXd(rhs)) * 10.0) {
      throw Error(ErrorCode::NoCommonDirection, "bivector is not of the form u ^ w");
    }
    primed.col(a) = u;
  }
  const double h55 = h(w, w);
  if (!(h55 > 0.0)) throw Error(ErrorCode::NotOrthonormalInput, "directional vector does not have positive norm");
  const double root = std::sqrt(h55);
  Mat5 out;
  for (int a = 0; a < 4; ++a) {
    const Vec5 ea = primed.col(a);
    out.col(a) = root * (ea - (h(ea, w) / h55) * w);
  }
  out.col(kFifth) = w / root;
  return out;
}

}  // namespace

Basis5 lemma1_construct(const std::array<Bivector5, 4>& e, const MetricH& h, Tolerance tol) {
  for (const auto& b : e)
    if (!is_simple(b, tol)) throw Error(ErrorCode::NoCommonDirection, "input bivector is not simple");
  const Mat4 g = induced_gram(e, h);
  if (max_abs(Mat4(g - eta4())) > 1e-9 * std::max(1.0, max_abs(g))) {
    throw Error(ErrorCode::NotOrthonormalInput, "g(E_a, E_b) differs from eta");
  }
  const FiveVector w = common_direction(e, tol);
  const Mat5 vectors = orthonormal_from(e, h, w.components, tol);
  return Basis5(vectors, classify_basis(vectors, h, w.components, Tolerance{1e-8, 1e-10}));
}

Basis5 lemma1_construct(const std::array<Bivector5, 4>& e, const MetricH& h, const OrientationTensor& eps,
                        Tolerance tol) {
  Basis5 b = lemma1_construct(e, h, tol);
  if (orientation_sign(b, eps) > 0) return b;
  return Basis5(Mat5(-b.matrix()), b.flags(), b.id());
}

Basis5 lemma2_construct(const std::array<Bivector5, 4>& e, const MetricH& h, Tolerance tol) {
  for (const auto& b : e)
    if (!is_simple(b, tol)) throw Error(ErrorCode::NoCommonDirection, "input bivector is not simple");
  const FiveVector w = common_direction(e, tol);
  const Mat4 g = induced_gram(e, h);
  Eigen::SelfAdjointEigenSolver<Mat4> eig(g);
  const Vec4 ev = eig.eigenvalues();
  const double cutoff = tol.rel * ev.cwiseAbs().maxCoeff();
  // Orthonormalising Lambda: columns are eigenvectors scaled by |lambda|^-1/2,
  // the positive one first.
  std::array<int, 4> order{};
  int positives = 0;
  int next = 1;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ev(i)) <= cutoff) throw Error(ErrorCode::DegenerateInducedMetric, "induced metric is degenerate");
    if (ev(i) > 0.0) {
      ++positives;
      order[0] = i;
    } else if (next < 4) {
      order[next++] = i;
    }
  }
  if (positives != 1) {
    throw Error(ErrorCode::DegenerateInducedMetric, "induced metric is not of Lorentz signature");
  }
  Mat4 lambda;
  for (int c = 0; c < 4; ++c) {
    const int i = order[c];
    lambda.col(c) = eig.eigenvectors().col(i) / std::sqrt(std::abs(ev(i)));
  }
  std::array<Bivector5, 4> ortho;
  for (int a = 0; a < 4; ++a) {
    Bivector5 sum;
    for (int b = 0; b < 4; ++b) sum = sum + lambda(b, a) * e[b];
    ortho[a] = sum;
  }
  const Mat5 primed = orthonormal_from(ortho, h, w.components, tol);
  const Mat4 inv = lambda.inverse();
  Mat5 vectors;
  vectors.leftCols<4>() = primed.leftCols<4>() * inv;
  vectors.col(kFifth) = primed.col(kFifth);
  return Basis5(vectors, classify_basis(vectors, h, w.components, Tolerance{1e-8, 1e-10}));
}

LemmaResidual lemma_residual(const Basis5& basis, const std::array<Bivector5, 4>& e, const MetricH& h,
                             bool orthonormal_target) {
  LemmaResidual r;
  for (int a = 0; a < 4; ++a) {
    r.wedge = std::max(r.wedge, max_abs(Mat5(basis.associated(a).matrix() - e[a].matrix())));
  }
  const Mat5 gram = basis.gram(h);
  if (orthonormal_target) {
    r.gram = max_abs(Mat5(gram - eta5()));
  } else {
    r.gram = std::abs(gram(kFifth, kFifth) - 1.0);
    for (int a = 0; a < 4; ++a) r.gram = std::max(r.gram, std::abs(gram(a, kFifth)));
  }
  return r;
}

}  // namespace fivevec
