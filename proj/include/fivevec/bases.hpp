#pragma once

// Changes between standard five-vector bases, their split into U-, P- and
// M-type factors, and construction of orthonormal and regular five-vector
// bases from a given basis of four-vectors.

#include <array>

#include "fivevec/pentaspace.hpp"

namespace fivevec {

/// e'_A = e_B L^B_A; row index is the upper index B.
class BasisChange {
 public:
  /// SingularMatrix unless L is invertible.
  explicit BasisChange(const Mat5& l);

  /// L^5_5 = a, L^a_b = delta / a.
  static BasisChange u_transform(double a);
  /// L^5_b = p_b, unit diagonal.
  static BasisChange p_transform(const RowVec4& p);
  /// L^a_b = t^a_b, L^5_5 = 1.
  static BasisChange m_transform(const Mat4& t);

  const Mat5& matrix() const { return l_; }
  Mat5 inverse() const;
  BasisChange then(const BasisChange& next) const { return BasisChange(Mat5(l_ * next.l_)); }

 private:
  Mat5 l_;
};

struct UPMDecomposition {
  double a = 1.0;
  RowVec4 p = RowVec4::Zero();
  Mat4 t = Mat4::Identity();

  /// U(a) * P(p) * M(t).
  BasisChange reassemble() const;
};

/// Totally antisymmetric five-index symbol fixed by eps_{01235} = sign.
struct OrientationTensor {
  int sign = +1;

  /// eps at the given storage slots.
  double component(const std::array<int, 5>& slots) const;
};

bool is_standard_change(const BasisChange& l, Tolerance tol = {});

/// Lambda^nu_mu = L^5_5 L^nu_mu; NotStandard unless L^a_5 = 0.
Mat4 induced_lambda(const BasisChange& l, Tolerance tol = {});

/// Lambda read off from e'_mu ^ e'_5 expanded over e_nu ^ e_5.
Mat4 induced_lambda_from_bivectors(const BasisChange& l);

/// L = U(a) P(p) M(t) with a = L^5_5, t = a * (4x4 block), p from the
/// bottom row. NotStandard or SingularBlock on invalid input.
UPMDecomposition decompose_upm(const BasisChange& l, Tolerance tol = {});

/// Classification flags of a basis relative to a metric and the
/// directional vector of the four-vector space.
BasisFlags classify_basis(const Mat5& vectors, const MetricH& h, const Vec5& directional, Tolerance tol = {});

/// h(e_5,e_5) = 1 and h(e_5,e_a) = 0 within tolerance.
bool is_regular(const Basis5& basis, const MetricH& h, Tolerance tol = {});

/// sign(det e) * eps_{01235}.
int orientation_sign(const Basis5& basis, const OrientationTensor& eps = {});

struct LemmaResidual {
  double wedge = 0.0;  ///< max |e_a ^ e_5 - E_a|
  double gram = 0.0;   ///< max deviation of h(e_A,e_B) from the target
};

/// Orthonormal standard basis with e_a ^ e_5 = E_a. The global sign follows
/// the directional-vector sign rule. NotOrthonormalInput when the E_a are
/// not orthonormal under g; NoCommonDirection when they share no
/// directional vector.
Basis5 lemma1_construct(const std::array<Bivector5, 4>& e, const MetricH& h, Tolerance tol = {});

/// As above, but with the global sign chosen so that the result has
/// orientation_sign(..., eps) == +1.
Basis5 lemma1_construct(const std::array<Bivector5, 4>& e, const MetricH& h, const OrientationTensor& eps,
                        Tolerance tol = {});

/// Regular standard basis with e_a ^ e_5 = E_a for any four-vector basis.
/// DegenerateInducedMetric unless g restricted to span(E) is Lorentzian.
Basis5 lemma2_construct(const std::array<Bivector5, 4>& e, const MetricH& h, Tolerance tol = {});

/// Postcondition residuals of a constructed basis against its input.
LemmaResidual lemma_residual(const Basis5& basis, const std::array<Bivector5, 4>& e, const MetricH& h,
                             bool orthonormal_target);

/// Gram matrix g(E_a, E_b).
Mat4 induced_gram(const std::array<Bivector5, 4>& e, const MetricH& h);

}  // namespace fivevec
