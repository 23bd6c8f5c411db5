#pragma once

// Property suites run by `fivevec verify`. Every check records its largest
// residual and the bound it is held to.

#include <cstdint>
#include <optional>
#include <string>

#include "fivevec/grid.hpp"
#include "fivevec/report.hpp"
#include "fivevec/stress_energy.hpp"

namespace fivevec {

enum class Suite { Algebra, Bases, Clifford, Connection, Poincare, Conservation, All };

Suite parse_suite(const std::string& s);
const char* to_string(Suite s);

struct VerifyOptions {
  std::uint64_t seed = 42;
  Tolerance tol{};  ///< library tolerance; also the bound of checks whose default bound is 1e-9
  double kappa = 1.0;
  int grid = 33;  ///< finest sample count per active axis in the refinement checks
  FdScheme scheme = FdScheme::Central2;
  std::optional<BasisFlag> basis;  ///< restricts the conservation suite to one basis
  int jobs = 1;
};

SuiteReport verify_algebra(const VerifyOptions& o);
SuiteReport verify_bases(const VerifyOptions& o);
SuiteReport verify_clifford(const VerifyOptions& o);
SuiteReport verify_connection(const VerifyOptions& o);
SuiteReport verify_poincare(const VerifyOptions& o);
SuiteReport verify_conservation(const VerifyOptions& o);

/// Runs one suite, or all of them in a fixed order (concurrently when
/// o.jobs > 1; the report order does not depend on it).
SuiteReport run_suite(Suite s, const VerifyOptions& o);

/// Free-scalar plane wave phi = cos(k.x) with null k in the t-x-y volume
/// [-1,1]^3 (z suppressed), count samples per axis.
MTensorField plane_wave_m(int count, const Vec4& k_upper, BasisFlag basis, double kappa);

struct Refinement {
  double coarse = 0.0;
  double fine = 0.0;
  double order = 0.0;  ///< log2(coarse / fine)
};

/// Conservation residual of the plane wave at (fine+1)/2 and fine samples,
/// both taken over the interior of the coarse grid.
Refinement plane_wave_refinement(int fine, const Vec4& k_upper, BasisFlag basis, FdScheme scheme, double kappa);

/// Error of the finite-difference connection transform of the O-basis
/// coefficients by L = N(x) W(x), with W a position-dependent boost, against
/// the analytic W^-1 dW on the region |x^0|, |x^1| <= 1/4. Axes 0 and 1
/// carry `count` samples over [-1/2, 1/2].
double pbasis_composite_error(int count, FdScheme scheme, double kappa);

}  // namespace fivevec
