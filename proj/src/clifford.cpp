#include "fivevec/clifford.hpp"

#include <algorithm>

namespace fivevec {

namespace {

using cd = std::complex<double>;

}  // namespace

O32Matrix::O32Matrix(const Mat5& o) : o_(o) {
  if (!all_finite(o)) throw Error(ErrorCode::NotO32, "non-finite entries");
  const double scale = std::max(1.0, max_abs(o) * max_abs(o));
  if (max_abs(Mat5(o.transpose() * eta5() * o - eta5())) > 1e-12 * scale) {
    throw Error(ErrorCode::NotO32, "O^T eta O differs from eta");
  }
}

std::array<CMat4, 4> dirac_gammas() {
  const cd i(0.0, 1.0);
  std::array<CMat4, 4> g;
  for (auto& m : g) m.setZero();
  g[0].diagonal() << 1.0, 1.0, -1.0, -1.0;
  // sigma_x, sigma_y, sigma_z in the off-diagonal blocks.
  Eigen::Matrix2cd sigma[3];
  sigma[0] << 0.0, 1.0, 1.0, 0.0;
  sigma[1] << 0.0, -i, i, 0.0;
  sigma[2] << 1.0, 0.0, 0.0, -1.0;
  for (int k = 0; k < 3; ++k) {
    g[k + 1].topRightCorner<2, 2>() = sigma[k];
    g[k + 1].bottomLeftCorner<2, 2>() = -sigma[k];
  }
  return g;
}

GammaSet construct_standard_gammaset() {
  const auto gammas = dirac_gammas();
  const cd i(0.0, 1.0);
  const CMat4 chiral = i * gammas[0] * gammas[1] * gammas[2] * gammas[3];
  const std::array<cd, 4> phases{cd(1.0, 0.0), cd(-1.0, 0.0), i, -i};
  // Gamma_5 is proportional to the chirality matrix with Gamma_5^2 = -1;
  // Gamma_mu = c gamma_mu Gamma_5. Take the first candidate that satisfies
  // both the anticommutation relations and the gamma reconstruction.
  for (const cd g5_phase : {i, -i}) {
    for (const cd c : phases) {
      GammaSet set;
      set.gamma[kFifth] = g5_phase * chiral;
      for (int mu = 0; mu < 4; ++mu) set.gamma[mu] = c * gammas[mu] * set.gamma[kFifth];
      if (verify_anticommutation(set) != 0.0) continue;
      const CMat4& g5 = set.gamma[kFifth];
      bool reproduces = true;
      for (int mu = 0; mu < 4 && reproduces; ++mu) {
        const CMat4 rebuilt = (i / 2.0) * (set.gamma[mu] * g5 - g5 * set.gamma[mu]);
        reproduces = max_abs(Eigen::MatrixXcd(rebuilt - gammas[mu])) == 0.0;
      }
      if (reproduces) return set;
    }
  }
  throw Error(ErrorCode::InvalidGammaSet, "no constituent set reproduces the Dirac matrices");
}

double verify_anticommutation(const GammaSet& g) {
  double worst = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) {
      const CMat4 r = g.gamma[a] * g.gamma[b] + g.gamma[b] * g.gamma[a] + 2.0 * eta5()(a, b) * CMat4::Identity();
      worst = std::max(worst, max_abs(Eigen::MatrixXcd(r)));
    }
  return worst;
}

std::array<CMat4, 4> gamma_from_gamma(const GammaSet& g, double tol) {
  const double residual = verify_anticommutation(g);
  if (residual > tol) {
    throw Error(ErrorCode::InvalidGammaSet, "anticommutation residual " + std::to_string(residual));
  }
  const cd i(0.0, 1.0);
  const CMat4& g5 = g.gamma[kFifth];
  std::array<CMat4, 4> out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = (i / 2.0) * (g.gamma[mu] * g5 - g5 * g.gamma[mu]);
  return out;
}

double dirac_residual(const std::array<CMat4, 4>& gammas) {
  double worst = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = m; n < 4; ++n) {
      const CMat4 r = gammas[m] * gammas[n] + gammas[n] * gammas[m] - 2.0 * eta4()(m, n) * CMat4::Identity();
      worst = std::max(worst, max_abs(Eigen::MatrixXcd(r)));
    }
  return worst;
}

GammaSet apply_o32(const GammaSet& g, const O32Matrix& o) {
  const Mat5& m = o.matrix();
  GammaSet out;
  for (int a = 0; a < 5; ++a) {
    out.gamma[a].setZero();
    for (int b = 0; b < 5; ++b) out.gamma[a] += m(b, a) * g.gamma[b];
  }
  return out;
}

}  // namespace fivevec
