#pragma once

// Seeded random generators for the property suites: Lorentz and Poincare
// transformations, O(3,2) matrices, and random inputs for the lemma and
// directional-vector checks.

#include <array>
#include <cstdint>
#include <random>

#include "fivevec/pentaspace.hpp"
#include "fivevec/poincare.hpp"

namespace fivevec {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  Vec4 vec4(double scale = 1.0);
  Vec5 vec5(double scale = 1.0);

  /// Rotation and boost product with rapidities up to max_rapidity.
  Mat4 lorentz(double max_rapidity = 1.0);
  PoincareTransform poincare(double max_rapidity = 1.0, double max_shift = 2.0);

  /// Product of plane rotations, elliptic or hyperbolic depending on the
  /// signs of eta on the plane, with an optional reflection.
  Mat5 o32(double max_angle = 1.0);

  /// Directional vector w of positive eta-norm and four vectors completing it
  /// to a basis.
  struct MaximalSpace {
    Vec5 w;
    std::array<Vec5, 4> u;
    std::array<Bivector5, 4> bivectors;  ///< u_a ^ w
  };
  MaximalSpace maximal_space();

  /// Orthonormal four-vector basis E_a = e_a ^ e_5 from a random O(3,2)
  /// frame, with e_a shifted along e_5 and the pair rescaled.
  std::array<Bivector5, 4> orthonormal_four_basis(Mat5* frame = nullptr);

  /// Maximal space whose four-vector basis has a Lorentzian induced metric.
  MaximalSpace lorentzian_four_basis();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fivevec
