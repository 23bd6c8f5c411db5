#pragma once

// The stress-energy-angular-momentum five-tensor M^mu_{AB}: assembly from the
// canonical stress-energy Theta and spin current Sigma, basis conversion,
// Poincare transformation and the conservation law M^mu_{AB;mu} = 0.

#include <array>
#include <vector>

#include "fivevec/flat_connection.hpp"
#include "fivevec/grid.hpp"
#include "fivevec/poincare.hpp"

namespace fivevec {

/// Theta^mu_a per sample as theta(mu, a).
struct ThetaField {
  Grid4 grid;
  std::vector<Mat4> theta;
};

/// Sigma^mu_{ab} per sample as sigma[mu](a, b), antisymmetric in (a, b).
struct SigmaField {
  Grid4 grid;
  std::vector<std::array<Mat4, 4>> sigma;
};

using MSample = std::array<Mat5, 4>;  ///< m[mu](A, B) = M^mu_{AB}

struct MTensorField {
  Grid4 grid;
  BasisFlag basis = BasisFlag::P;
  double kappa = 1.0;
  std::vector<MSample> m;

  /// Flattens into a 100-component FieldOnGrid (mu, A, B row major).
  FieldOnGrid to_field() const;
  static MTensorField from_field(const FieldOnGrid& f, double kappa);
};

/// M^mu_{ab} = x_a Theta^mu_b - x_b Theta^mu_a + Sigma^mu_{ab},
/// M^mu_{5a} = -M^mu_{a5} = Theta^mu_a / kappa, M^mu_{55} = 0 (P basis).
MSample assemble_sample(const Mat4& theta, const std::array<Mat4, 4>& sigma, const Vec4& x, double kappa);

/// GridMismatch when the fields are sampled on different grids.
MTensorField assemble_m_p(const ThetaField& theta, const SigmaField& sigma, const LorentzChart& chart);

/// Recovers Theta (kappa * M^mu_{5a}) from a sample.
Mat4 theta_of(const MSample& m, double kappa);

/// M_O = N^-T M_P N^-1 per mu, N = p_from_o(x, kappa).
MSample p_to_o_sample(const MSample& m, const Vec4& x, double kappa);
MSample o_to_p_sample(const MSample& m, const Vec4& x, double kappa);

MTensorField to_o_basis(const MTensorField& m);
MTensorField to_p_basis(const MTensorField& m);

/// Blockwise transformation of a P-basis sample: Theta' = lambda Theta lambda^-1,
/// M' = lambda M lambda^-1 lambda^-1 + a-terms.
MSample transform_m_sample(const MSample& m, const PoincareTransform& t, double kappa);
/// Generic law: M'^mu_{AB} = lambda^mu_nu M^nu_{CD} K^C_A K^D_B.
MSample transform_m_sample_tensor_law(const MSample& m, const PoincareTransform& t, double kappa);

/// Samplewise transform of an O- or P-basis field (O basis: the tensor law
/// with blockdiag(lambda^-1, 1)). Samples keep their identity; the grid
/// metadata still describes the original chart coordinates.
MTensorField transform_m(const MTensorField& m, const PoincareTransform& t);

struct ConservationReport {
  double momentum = 0.0;  ///< max interior |M^mu_{5a;mu}|
  double angular = 0.0;   ///< max interior |M^mu_{ab;mu}|
  std::size_t interior_samples = 0;
  std::vector<Mat5> divergence;  ///< M^mu_{AB;mu} per sample (boundary samples zero)
  std::vector<char> interior;
  double max() const { return std::max(momentum, angular); }
};

/// Divergence with the connection of the field's basis: zero coefficients in
/// the P basis, flat_h(kappa) in the O basis.
ConservationReport conservation_check(const MTensorField& m, FdScheme scheme);

// Analytic test fields.

/// phi = cos(k.x) with k null: Theta^mu_a = d^mu phi d_a phi - delta/2 (dphi)^2.
Mat4 plane_wave_theta(const Vec4& k_upper, const Vec4& x);
ThetaField sample_plane_wave(const Grid4& grid, const Vec4& k_upper);
ThetaField constant_theta(const Grid4& grid, const Mat4& theta);
SigmaField zero_sigma(const Grid4& grid);

}  // namespace fivevec
