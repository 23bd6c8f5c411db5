#pragma once

// Five-vector connection coefficients, their compatibility with four-vector
// transport, the flat-spacetime coefficients in the orthonormal (O) basis,
// the self-parallel (P) basis, transport, covariant derivatives on grids and
// the covariant derivative of h.

#include <array>
#include <vector>

#include "fivevec/bases.hpp"
#include "fivevec/grid.hpp"
#include "fivevec/pentaspace.hpp"

namespace fivevec {

/// G^A_{B mu} stored as g[mu](A, B): nabla_mu e_A = e_B G^B_{A mu}.
struct ConnectionCoeffs {
  std::array<Mat5, 4> g{Mat5::Zero(), Mat5::Zero(), Mat5::Zero(), Mat5::Zero()};

  double at(int a_label, int b_label, int mu) const { return g[mu](slot(a_label), slot(b_label)); }
  double& at(int a_label, int b_label, int mu) { return g[mu](slot(a_label), slot(b_label)); }
  double max_abs() const;
};

/// Gamma^a_{b mu} stored as gamma[mu](a, b).
struct FourConnection {
  std::array<Mat4, 4> gamma{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
};

/// Lorentz coordinates x = lambda x_ref + origin, with transport constant kappa.
struct LorentzChart {
  Vec4 origin = Vec4::Zero();
  Mat4 lambda = Mat4::Identity();
  double kappa = 1.0;

  /// InvalidArgument unless lambda^T eta lambda = eta to 1e-12.
  void validate() const;
};

struct CompatibilityReport {
  double standard_residual = 0.0;  ///< max |G^a_{5 mu}|
  double four_residual = 0.0;      ///< max |Gamma^a_{b mu} - G^a_{b mu} - delta G^5_{5 mu}|
  bool pass = false;
};

CompatibilityReport check_transport_compatibility(const ConnectionCoeffs& g, const FourConnection& gamma,
                                                  Tolerance tol = {});

/// O-basis coefficients in flat spacetime: only G^5_{b mu} = -kappa eta_{b mu}.
ConnectionCoeffs flat_h(double kappa);

/// Components of p_A = e_B N^B_A: p_a = e_a + kappa x_a e_5, p_5 = e_5.
BasisChange p_from_o(const Vec4& x, double kappa);
Mat5 p_from_o_matrix(const Vec4& x, double kappa);

/// h(p_A, p_B) at x in closed form.
Mat5 pbasis_metric(const Vec4& x, double kappa);

/// Parallel transport of components given in the `flag` basis from one point
/// to another. Path-independent: conjugation by the self-parallel basis.
Vec5 transport(const Vec5& v, const Vec4& from, const Vec4& to, BasisFlag flag, double kappa);

/// Per-sample connection coefficients on a grid.
struct ConnectionField {
  Grid4 grid;
  std::vector<ConnectionCoeffs> coeffs;
  std::vector<char> interior;
  double truncation_estimate = 0.0;
};

/// G'_mu = L^-1 G_nu L Lambda^nu_mu + L^-1 (d_nu L) Lambda^nu_mu with the
/// derivative by finite differences. `l_field` carries 25 components (row
/// major L^A_B), `lambda_field` 16 (row major Lambda^nu_mu). The truncation
/// estimate compares central2 against central4 on interior samples when the
/// grid allows; GridTooCoarse when it exceeds max_truncation.
ConnectionField connection_transform(const ConnectionCoeffs& g, const FieldOnGrid& l_field,
                                     const FieldOnGrid& lambda_field, FdScheme scheme,
                                     double max_truncation = 1e-3);

/// Exact transform for a position-independent L (derivative term absent).
ConnectionCoeffs connection_transform_constant(const ConnectionCoeffs& g, const BasisChange& l, const Mat4& lambda);

struct CovariantDerivativeField {
  Grid4 grid;
  /// u^A_{;mu} per sample, entry (A, mu).
  std::vector<Eigen::Matrix<double, 5, 4>> values;
  std::vector<char> interior;
};

/// u^A_{;mu} = d_mu u^A + G^A_{B mu} u^B on a five-vector field (5 comps).
CovariantDerivativeField covariant_derivative(const FieldOnGrid& u, const ConnectionCoeffs& g, FdScheme scheme);

/// h_{AB;mu} = d_mu h_AB - h_CB G^C_{A mu} - h_AC G^C_{B mu} at one point.
std::array<Mat5, 4> covariant_derivative_h(const Mat5& h, const std::array<Mat5, 4>& dh, const ConnectionCoeffs& g);

struct NablaHReport {
  double h55 = 0.0;  ///< max |h_{55;mu}|
  double ha5 = 0.0;  ///< max |h_{a5;mu} - kappa g_{a mu}|
  double hab = 0.0;  ///< max |h_55 h_{ab;mu} - kappa (g_{a mu} h_{b5} + g_{b mu} h_{a5})|
  double max() const;
};

/// Residuals of the covariant equations for h over interior samples.
/// h_field has 25 components, g_field 16.
NablaHReport nabla_h_check(const ConnectionCoeffs& g, const FieldOnGrid& h_field, double kappa,
                           const FieldOnGrid& g_field, FdScheme scheme);

/// h, its covariant derivative and kappa at one point, in a standard basis.
struct NablaHPoint {
  Mat5 h = eta5();
  std::array<Mat5, 4> nabla_h{Mat5::Zero(), Mat5::Zero(), Mat5::Zero(), Mat5::Zero()};
  double kappa = 1.0;
};

/// |h(e,e) {nabla_U h}(v,w) - kappa g(U, v^e) h(w,e) - kappa g(U, w^e) h(v,e)|
/// with U identified with U^mu e_mu ^ e_5. NotDirectional unless e is a
/// positive-norm multiple of e_5.
double abstract_nabla_h_residual(const Vec4& u, const Vec5& v, const Vec5& w, const Vec5& e, const NablaHPoint& data,
                              Tolerance tol = {});

}  // namespace fivevec
