#pragma once

// The space of five-vectors with its inner product h, bivectors over it, and
// the identification of four-vectors with the simple bivectors u ^ w that
// share a directional vector w.

#include <cstdint>
#include <span>

#include "fivevec/numeric.hpp"

namespace fivevec {

/// Opaque tag naming the basis a set of components refers to.
struct BasisId {
  std::uint32_t value = 0;
  auto operator<=>(const BasisId&) const = default;
};

/// Symmetric nondegenerate inner product with two positive and three
/// negative eigenvalues.
class MetricH {
 public:
  explicit MetricH(const Mat5& h, Tolerance tol = {});
  static MetricH eta();

  const Mat5& matrix() const { return h_; }
  double operator()(const Vec5& u, const Vec5& v) const { return u.dot(h_ * v); }

 private:
  Mat5 h_;
};

struct FiveVector {
  Vec5 components = Vec5::Zero();
  BasisId basis{};

  double at(int index_label) const { return components(slot(index_label)); }
  static FiveVector unit(int index_label, BasisId basis = {});
};

struct FiveForm {
  Vec5 components = Vec5::Zero();
  BasisId basis{};

  double at(int index_label) const { return components(slot(index_label)); }
  double operator()(const FiveVector& v) const { return components.dot(v.components); }
};

struct FourVector {
  Vec4 components = Vec4::Zero();
  BasisId basis{};
};

/// Antisymmetric rank-2 contravariant five-tensor.
class Bivector5 {
 public:
  Bivector5() : b_(Mat5::Zero()) {}
  /// Throws NotAntisymmetric when b + b^T exceeds tol.abs + tol.rel*|b|.
  explicit Bivector5(const Mat5& b, Tolerance tol = {});

  const Mat5& matrix() const { return b_; }
  double at(int a_label, int b_label) const { return b_(slot(a_label), slot(b_label)); }

  /// The ten independent components b^{AB}, A<B, in storage order.
  Eigen::Matrix<double, 10, 1> packed() const;

  Bivector5 operator+(const Bivector5& o) const;
  Bivector5 operator-(const Bivector5& o) const;
  Bivector5 operator*(double s) const;
  friend Bivector5 operator*(double s, const Bivector5& b) { return b * s; }

 private:
  struct Unchecked {};
  Bivector5(const Mat5& b, Unchecked) : b_(b) {}
  Mat5 b_;
  friend Bivector5 wedge(const Vec5& u, const Vec5& v);
};

/// u ^ v = u (x) v - v (x) u on raw components.
Bivector5 wedge(const Vec5& u, const Vec5& v);
/// BasisMismatch when the operands refer to different bases.
Bivector5 wedge(const FiveVector& u, const FiveVector& v);

/// Components of B ^ B, indexed by the storage slot omitted from the
/// four-form index set. Each is 2 (b^{AB}b^{CD} - b^{AC}b^{BD} + b^{AD}b^{BC}).
Vec5 square_wedge(const Bivector5& b);

/// Trivector components (B ^ w)^{ABC} for A<B<C, i.e. the map whose kernel
/// characterises directional vectors.
Eigen::Matrix<double, 10, 5> wedge_with_vector_map(const Bivector5& b);

/// B ^ B = 0 relative to |B|^2 (max-entry norm).
bool is_simple(const Bivector5& b, Tolerance tol = {});

/// The directional vector shared by a maximal space of simple bivectors,
/// unit-normalised with its first non-negligible component positive.
FiveVector directional_vector(std::span<const Bivector5> bivectors, Tolerance tol = {});

/// g(B1, B2) = 1/2 h_AC h_BD B1^{AB} B2^{CD}; equals
/// h(u,v)h(w,w) - h(u,w)h(v,w) for B1 = u^w, B2 = v^w.
double g_from_h(const Bivector5& b1, const Bivector5& b2, const MetricH& h);

enum class NormClass { Positive, Null, Negative };
const char* to_string(NormClass c);

NormClass classify_directional(const FiveVector& w, const MetricH& h, Tolerance tol = {});

struct BasisFlags {
  bool standard = false;
  bool regular = false;
  bool orthonormal = false;
  bool operator==(const BasisFlags&) const = default;
};

/// Five basis vectors, stored as the columns of an invertible matrix of
/// components against a fixed reference basis.
class Basis5 {
 public:
  /// SingularMatrix unless `vectors` is invertible.
  explicit Basis5(const Mat5& vectors, BasisFlags flags = {}, BasisId id = {});
  static Basis5 reference();

  const Mat5& matrix() const { return e_; }
  Vec5 vector(int index_label) const { return e_.col(slot(index_label)); }
  /// E_mu = e_mu ^ e_5.
  Bivector5 associated(int mu) const;
  BasisFlags flags() const { return flags_; }
  BasisId id() const { return id_; }

  /// h(e_A, e_B) as a matrix.
  Mat5 gram(const MetricH& h) const { return e_.transpose() * h.matrix() * e_; }

 private:
  Mat5 e_;
  BasisFlags flags_;
  BasisId id_;
};

/// U^mu with B = U^mu (e_mu ^ e_5); NotInMaximalSpace when the
/// least-squares reconstruction residual exceeds tolerance.
FourVector four_from_bivector(const Bivector5& b, const Basis5& basis, Tolerance tol = {});

/// U^mu (e_mu ^ e_5).
Bivector5 bivector_from_four(const FourVector& u, const Basis5& basis);

}  // namespace fivevec
