#pragma once

// The five SO(3,2) Clifford constituents Gamma_A as 4x4 complex matrices,
// with Gamma_A Gamma_B + Gamma_B Gamma_A = -2 eta_AB.

#include <array>

#include "fivevec/numeric.hpp"

namespace fivevec {

struct GammaSet {
  std::array<CMat4, 5> gamma;  ///< storage order; gamma[4] is Gamma_5

  const CMat4& at(int index_label) const { return gamma[slot(index_label)]; }
};

/// Real 5x5 matrix with O^T eta O = eta.
class O32Matrix {
 public:
  /// NotO32 when |O^T eta O - eta| exceeds 1e-12 (scaled by |O|^2).
  explicit O32Matrix(const Mat5& o);
  const Mat5& matrix() const { return o_; }

 private:
  Mat5 o_;
};

/// Dirac representation, signature (+---): gamma_0 = diag(1,1,-1,-1),
/// gamma_k = [[0, sigma_k], [-sigma_k, 0]].
std::array<CMat4, 4> dirac_gammas();

/// A constituent set with entries in {0, +-1, +-i} whose gamma_from_gamma
/// reproduces dirac_gammas() exactly.
GammaSet construct_standard_gammaset();

/// max over A,B of |Gamma_A Gamma_B + Gamma_B Gamma_A + 2 eta_AB I|.
double verify_anticommutation(const GammaSet& g);

/// gamma_mu = (i/2)(Gamma_mu Gamma_5 - Gamma_5 Gamma_mu). InvalidGammaSet when
/// the anticommutation residual exceeds `tol`.
std::array<CMat4, 4> gamma_from_gamma(const GammaSet& g, double tol = 1e-12);

/// max over mu,nu of |gamma_mu gamma_nu + gamma_nu gamma_mu - 2 eta_mu_nu I|.
double dirac_residual(const std::array<CMat4, 4>& gammas);

/// Gamma'_A = O^B_A Gamma_B.
GammaSet apply_o32(const GammaSet& g, const O32Matrix& o);

}  // namespace fivevec
