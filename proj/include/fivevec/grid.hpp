#pragma once

// Regular sample grids over chart coordinates (x^0..x^3) and finite
// difference partial derivatives of sampled fields.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fivevec/numeric.hpp"

namespace fivevec {

enum class FdScheme { Central2, Central4 };
enum class BasisFlag { O, P, Regular };

const char* to_string(FdScheme s);
const char* to_string(BasisFlag b);
FdScheme parse_scheme(const std::string& s);
BasisFlag parse_basis_flag(const std::string& s);

/// Axis-aligned grid. An axis with count 1 is suppressed: fields are taken
/// to be independent of that coordinate.
struct Grid4 {
  std::array<int, 4> counts{1, 1, 1, 1};
  Vec4 origin = Vec4::Zero();
  Vec4 spacing = Vec4::Ones();

  /// InvalidArgument on non-positive counts or spacing.
  void validate() const;
  std::size_t size() const;
  Vec4 point(std::size_t index) const;
  std::array<int, 4> unflatten(std::size_t index) const;
  std::size_t flatten(const std::array<int, 4>& idx) const;
  bool operator==(const Grid4&) const = default;

  /// counts^dims grid spanning [lo, hi] on each listed axis; other axes
  /// suppressed at coordinate 0.
  static Grid4 cube(int count, double lo, double hi, std::array<bool, 4> active);
};

/// Sample-major storage: values[sample * components + c].
struct FieldOnGrid {
  Grid4 grid;
  int components = 1;
  BasisFlag basis = BasisFlag::O;
  std::vector<double> values;

  FieldOnGrid() = default;
  FieldOnGrid(Grid4 g, int ncomp, BasisFlag flag = BasisFlag::O);

  std::span<double> sample(std::size_t i) { return {values.data() + i * components, static_cast<std::size_t>(components)}; }
  std::span<const double> sample(std::size_t i) const {
    return {values.data() + i * components, static_cast<std::size_t>(components)};
  }
  /// GridMismatch unless values.size() matches grid and component count.
  void validate() const;
};

/// Fills a field by evaluating fn at every grid point.
FieldOnGrid sample_field(const Grid4& grid, int components, const std::function<void(const Vec4&, std::span<double>)>& fn,
                         BasisFlag flag = BasisFlag::O);

/// Minimum samples per active axis required by a scheme (3 or 5).
int min_samples(FdScheme scheme);

/// GridTooCoarse when an active axis has fewer samples than the scheme needs.
void require_resolution(const Grid4& grid, FdScheme scheme);

/// d/dx^axis of every component. Interior samples use the central stencil,
/// samples near the edge fall back to lower-order or one-sided stencils.
FieldOnGrid partial_derivative(const FieldOnGrid& f, int axis, FdScheme scheme);

/// 1 where every active axis uses the full central stencil of the scheme.
std::vector<char> interior_mask(const Grid4& grid, FdScheme scheme);

}  // namespace fivevec
