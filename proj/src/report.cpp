#include "fivevec/report.hpp"

#include <algorithm>
#include <cstdio>

namespace fivevec {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

void SuiteReport::add(std::string name, double residual, double tol, std::string note) {
  checks.push_back({std::move(name), residual, tol, std::move(note)});
}

void SuiteReport::append(const SuiteReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool SuiteReport::all_pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass(); }));
}

std::string SuiteReport::human() const {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::string out;
  for (const auto& c : checks) {
    out += c.pass() ? "PASS  " : "FAIL  ";
    out += c.name;
    out.append(width - c.name.size() + 2, ' ');
    out += "residual " + num(c.residual) + "  tol " + num(c.tol);
    if (!c.note.empty()) out += "  (" + c.note + ")";
    out += '\n';
  }
  out += std::to_string(checks.size() - failures()) + "/" + std::to_string(checks.size()) + " checks passed\n";
  return out;
}

std::string SuiteReport::machine() const {
  std::string out;
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.9e %.9e ", c.residual, c.tol);
    out += c.name + buf + (c.pass() ? "pass" : "fail") + '\n';
  }
  return out;
}

}  // namespace fivevec
