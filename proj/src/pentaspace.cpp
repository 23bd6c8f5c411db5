#include "fivevec/pentaspace.hpp"

#include <algorithm>
#include <cmath>

namespace fivevec {

MetricH::MetricH(const Mat5& h, Tolerance tol) : h_(h) {
  if (!all_finite(h)) throw Error(ErrorCode::InvalidArgument, "metric has non-finite entries");
  const double scale = std::max(1.0, max_abs(h));
  if (max_abs(Mat5(h - h.transpose())) > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, "metric is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat5> eig(h);
  const auto& ev = eig.eigenvalues();
  const double cutoff = tol.rel * ev.cwiseAbs().maxCoeff();
  int positive = 0;
  int negative = 0;
  for (int i = 0; i < 5; ++i) {
    if (ev(i) > cutoff) ++positive;
    else if (ev(i) < -cutoff) ++negative;
  }
  if (positive + negative != 5) throw Error(ErrorCode::InvalidArgument, "metric is degenerate");
  if (positive != 2 || negative != 3) {
    throw Error(ErrorCode::InvalidArgument, "metric must have two positive and three negative eigenvalues");
  }
}

MetricH MetricH::eta() { return MetricH(eta5()); }

FiveVector FiveVector::unit(int index_label, BasisId basis) {
  FiveVector v;
  v.components(slot(index_label)) = 1.0;
  v.basis = basis;
  return v;
}

Bivector5::Bivector5(const Mat5& b, Tolerance tol) : b_(b) {
  if (!all_finite(b)) throw Error(ErrorCode::InvalidArgument, "bivector has non-finite entries");
  if (max_abs(Mat5(b + b.transpose())) > tol.abs + tol.rel * max_abs(b)) {
    throw Error(ErrorCode::NotAntisymmetric, "bivector matrix is not antisymmetric");
  }
}

Eigen::Matrix<double, 10, 1> Bivector5::packed() const {
  Eigen::Matrix<double, 10, 1> out;
  int k = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) out(k++) = b_(a, b);
  return out;
}

Bivector5 Bivector5::operator+(const Bivector5& o) const { return {Mat5(b_ + o.b_), Unchecked{}}; }
Bivector5 Bivector5::operator-(const Bivector5& o) const { return {Mat5(b_ - o.b_), Unchecked{}}; }
Bivector5 Bivector5::operator*(double s) const { return {Mat5(s * b_), Unchecked{}}; }

Bivector5 wedge(const Vec5& u, const Vec5& v) {
  const Mat5 uv = u * v.transpose();
  return {Mat5(uv - uv.transpose()), Bivector5::Unchecked{}};
}

Bivector5 wedge(const FiveVector& u, const FiveVector& v) {
  if (u.basis != v.basis) throw Error(ErrorCode::BasisMismatch, "wedge operands refer to different bases");
  return wedge(u.components, v.components);
}

Vec5 square_wedge(const Bivector5& bv) {
  const Mat5& b = bv.matrix();
  Vec5 out;
  for (int omit = 0; omit < 5; ++omit) {
    std::array<int, 4> idx{};
    int k = 0;
    for (int i = 0; i < 5; ++i)
      if (i != omit) idx[k++] = i;
    const auto [p, q, r, s] = idx;
    out(omit) = 2.0 * (b(p, q) * b(r, s) - b(p, r) * b(q, s) + b(p, s) * b(q, r));
  }
  return out;
}

Eigen::Matrix<double, 10, 5> wedge_with_vector_map(const Bivector5& bv) {
  const Mat5& b = bv.matrix();
  Eigen::Matrix<double, 10, 5> m = Eigen::Matrix<double, 10, 5>::Zero();
  int row = 0;
  for (int a = 0; a < 5; ++a)
    for (int bb = a + 1; bb < 5; ++bb)
      for (int c = bb + 1; c < 5; ++c) {
        // (B ^ w)^{abc} = B^{ab} w^c + B^{bc} w^a + B^{ca} w^b
        m(row, c) += b(a, bb);
        m(row, a) += b(bb, c);
        m(row, bb) += b(c, a);
        ++row;
      }
  return m;
}

bool is_simple(const Bivector5& b, Tolerance tol) {
  const double n = max_abs(b.matrix());
  if (n == 0.0) return true;
  return max_abs(square_wedge(b)) <= tol.rel * n * n;
}

FiveVector directional_vector(std::span<const Bivector5> bivectors, Tolerance tol) {
  for (const auto& b : bivectors) {
    if (!is_simple(b, tol)) throw Error(ErrorCode::NotSimple, "input bivector is not simple");
  }
  Eigen::MatrixXd span_rows(static_cast<Eigen::Index>(bivectors.size()), 10);
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(10 * bivectors.size()), 5);
  for (std::size_t i = 0; i < bivectors.size(); ++i) {
    const double n = max_abs(bivectors[i].matrix());
    const double s = n > 0.0 ? 1.0 / n : 1.0;
    span_rows.row(static_cast<Eigen::Index>(i)) = s * bivectors[i].packed().transpose();
    stacked.block(static_cast<Eigen::Index>(10 * i), 0, 10, 5) = s * wedge_with_vector_map(bivectors[i]);
  }
  if (bivectors.empty() || rank(span_rows, tol) < 4) {
    throw Error(ErrorCode::DimensionTooSmall, "bivectors span fewer than four dimensions");
  }
  const auto kernel = null_space(stacked, tol);
  if (kernel.size() != 1) {
    throw Error(ErrorCode::NotMaximalSpace,
                "common directional vector is not unique (kernel dimension " + std::to_string(kernel.size()) + ")");
  }
  Vec5 w = kernel.front().normalized();
  for (int i = 0; i < 5; ++i) {
    if (std::abs(w(i)) > tol.rel) {
      if (w(i) < 0.0) w = -w;
      break;
    }
  }
  return FiveVector{w, {}};
}

double g_from_h(const Bivector5& b1, const Bivector5& b2, const MetricH& h) {
  const Mat5& hm = h.matrix();
  const Mat5 lowered = hm * b1.matrix() * hm;
  return 0.5 * lowered.cwiseProduct(b2.matrix()).sum();
}

const char* to_string(NormClass c) {
  switch (c) {
    case NormClass::Positive: return "Positive";
    case NormClass::Null: return "Null";
    case NormClass::Negative: return "Negative";
  }
  return "Unknown";
}

NormClass classify_directional(const FiveVector& w, const MetricH& h, Tolerance tol) {
  const double n2 = w.components.squaredNorm();
  if (n2 == 0.0) throw Error(ErrorCode::ZeroVector, "directional vector must be nonzero");
  const double value = h(w.components, w.components);
  const double band = tol.abs + tol.rel * max_abs(h.matrix()) * n2;
  if (std::abs(value) <= band) return NormClass::Null;
  return value > 0.0 ? NormClass::Positive : NormClass::Negative;
}

Basis5::Basis5(const Mat5& vectors, BasisFlags flags, BasisId id) : e_(vectors), flags_(flags), id_(id) {
  if (!all_finite(vectors)) throw Error(ErrorCode::InvalidArgument, "basis has non-finite entries");
  Eigen::JacobiSVD<Mat5> svd(vectors);
  const auto& sv = svd.singularValues();
  if (!(sv(4) > 1e-12 * sv(0))) throw Error(ErrorCode::SingularMatrix, "basis vectors are linearly dependent");
}

Basis5 Basis5::reference() { return Basis5(Mat5::Identity(), BasisFlags{true, true, true}); }

Bivector5 Basis5::associated(int mu) const {
  if (mu < 0 || mu > 3) throw Error(ErrorCode::InvalidArgument, "four-index must be 0..3");
  return wedge(Vec5(e_.col(mu)), Vec5(e_.col(kFifth)));
}

FourVector four_from_bivector(const Bivector5& b, const Basis5& basis, Tolerance tol) {
  Eigen::Matrix<double, 10, 4> design;
  for (int mu = 0; mu < 4; ++mu) design.col(mu) = basis.associated(mu).packed();
  const Eigen::Matrix<double, 10, 1> rhs = b.packed();
  const Vec4 u = design.colPivHouseholderQr().solve(rhs);
  const double residual = max_abs(Eigen::MatrixXd(design * u - rhs));
  if (residual > tol.abs + tol.rel * max_abs(Eigen::MatrixXd(rhs))) {
    throw Error(ErrorCode::NotInMaximalSpace, "bivector is not of the form U^mu e_mu ^ e_5");
  }
  return FourVector{u, basis.id()};
}

Bivector5 bivector_from_four(const FourVector& u, const Basis5& basis) {
  Bivector5 out;
  for (int mu = 0; mu < 4; ++mu) out = out + u.components(mu) * basis.associated(mu);
  return out;
}

}  // namespace fivevec
