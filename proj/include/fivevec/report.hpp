#pragma once

// Check results collected by the verification suites and their human and
// machine renderings.

#include <string>
#include <vector>

namespace fivevec {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  std::string note;  ///< shown in human output only

  bool pass() const { return residual <= tol; }
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  void add(std::string name, double residual, double tol, std::string note = {});
  void append(const SuiteReport& other);
  bool all_pass() const;
  std::size_t failures() const;

  /// Aligned table plus a summary line.
  std::string human() const;
  /// One `name residual tol status` record per line.
  std::string machine() const;
};

}  // namespace fivevec
