#include "fivevec/grid.hpp"

namespace fivevec {

const char* to_string(FdScheme s) { return s == FdScheme::Central2 ? "central2" : "central4"; }

const char* to_string(BasisFlag b) {
  switch (b) {
    case BasisFlag::O: return "O";
    case BasisFlag::P: return "P";
    case BasisFlag::Regular: return "regular";
  }
  return "?";
}

FdScheme parse_scheme(const std::string& s) {
  if (s == "central2") return FdScheme::Central2;
  if (s == "central4") return FdScheme::Central4;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + s + "'");
}

BasisFlag parse_basis_flag(const std::string& s) {
  if (s == "O") return BasisFlag::O;
  if (s == "P") return BasisFlag::P;
  if (s == "regular") return BasisFlag::Regular;
  throw Error(ErrorCode::InvalidArgument, "unknown basis flag '" + s + "'");
}

void Grid4::validate() const {
  for (int a = 0; a < 4; ++a) {
    if (counts[a] < 1) throw Error(ErrorCode::InvalidArgument, "grid counts must be positive");
    if (!(spacing(a) > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  }
  if (!origin.allFinite() || !spacing.allFinite()) throw Error(ErrorCode::InvalidArgument, "grid is not finite");
}

std::size_t Grid4::size() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

std::array<int, 4> Grid4::unflatten(std::size_t index) const {
  std::array<int, 4> idx{};
  // Axis 3 varies fastest.
  for (int a = 3; a >= 0; --a) {
    idx[a] = static_cast<int>(index % static_cast<std::size_t>(counts[a]));
    index /= static_cast<std::size_t>(counts[a]);
  }
  return idx;
}

std::size_t Grid4::flatten(const std::array<int, 4>& idx) const {
  std::size_t index = 0;
  for (int a = 0; a < 4; ++a) index = index * static_cast<std::size_t>(counts[a]) + static_cast<std::size_t>(idx[a]);
  return index;
}

Vec4 Grid4::point(std::size_t index) const {
  const auto idx = unflatten(index);
  Vec4 x;
  for (int a = 0; a < 4; ++a) x(a) = origin(a) + spacing(a) * idx[a];
  return x;
}

Grid4 Grid4::cube(int count, double lo, double hi, std::array<bool, 4> active) {
  Grid4 g;
  for (int a = 0; a < 4; ++a) {
    if (active[a]) {
      g.counts[a] = count;
      g.origin(a) = lo;
      g.spacing(a) = (hi - lo) / (count - 1);
    } else {
      g.counts[a] = 1;
      g.origin(a) = 0.0;
      g.spacing(a) = 1.0;
    }
  }
  return g;
}

FieldOnGrid::FieldOnGrid(Grid4 g, int ncomp, BasisFlag flag)
    : grid(g), components(ncomp), basis(flag), values(g.size() * static_cast<std::size_t>(ncomp), 0.0) {}

void FieldOnGrid::validate() const {
  grid.validate();
  if (components < 1) throw Error(ErrorCode::GridMismatch, "component count must be positive");
  if (values.size() != grid.size() * static_cast<std::size_t>(components)) {
    throw Error(ErrorCode::GridMismatch, "payload length does not match grid and component count");
  }
}

FieldOnGrid sample_field(const Grid4& grid, int components, const std::function<void(const Vec4&, std::span<double>)>& fn,
                         BasisFlag flag) {
  grid.validate();
  FieldOnGrid f(grid, components, flag);
  for (std::size_t i = 0; i < grid.size(); ++i) fn(grid.point(i), f.sample(i));
  return f;
}

int min_samples(FdScheme scheme) { return scheme == FdScheme::Central2 ? 3 : 5; }

void require_resolution(const Grid4& grid, FdScheme scheme) {
  for (int a = 0; a < 4; ++a) {
    if (grid.counts[a] > 1 && grid.counts[a] < min_samples(scheme)) {
      throw Error(ErrorCode::GridTooCoarse, "axis " + std::to_string(a) + " has " + std::to_string(grid.counts[a]) +
                                                " samples; " + to_string(scheme) + " needs " +
                                                std::to_string(min_samples(scheme)));
    }
  }
}

FieldOnGrid partial_derivative(const FieldOnGrid& f, int axis, FdScheme scheme) {
  f.validate();
  require_resolution(f.grid, scheme);
  FieldOnGrid out(f.grid, f.components, f.basis);
  const int n = f.grid.counts[axis];
  if (n == 1) return out;
  const double h = f.grid.spacing(axis);
  const int nc = f.components;
  for (std::size_t s = 0; s < f.grid.size(); ++s) {
    auto idx = f.grid.unflatten(s);
    const int i = idx[axis];
    auto at = [&](int j, int c) {
      idx[axis] = j;
      return f.values[f.grid.flatten(idx) * nc + c];
    };
    auto dst = out.sample(s);
    for (int c = 0; c < nc; ++c) {
      double d;
      if (scheme == FdScheme::Central4 && i >= 2 && i <= n - 3) {
        d = (at(i - 2, c) - 8.0 * at(i - 1, c) + 8.0 * at(i + 1, c) - at(i + 2, c)) / (12.0 * h);
      } else if (i >= 1 && i <= n - 2) {
        d = (at(i + 1, c) - at(i - 1, c)) / (2.0 * h);
      } else if (i == 0) {
        d = (-3.0 * at(0, c) + 4.0 * at(1, c) - at(2, c)) / (2.0 * h);
      } else {
        d = (3.0 * at(n - 1, c) - 4.0 * at(n - 2, c) + at(n - 3, c)) / (2.0 * h);
      }
      dst[static_cast<std::size_t>(c)] = d;
    }
  }
  return out;
}

std::vector<char> interior_mask(const Grid4& grid, FdScheme scheme) {
  const int margin = scheme == FdScheme::Central2 ? 1 : 2;
  std::vector<char> mask(grid.size(), 1);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const auto idx = grid.unflatten(s);
    for (int a = 0; a < 4; ++a) {
      if (grid.counts[a] == 1) continue;
      if (idx[a] < margin || idx[a] > grid.counts[a] - 1 - margin) mask[s] = 0;
    }
  }
  return mask;
}

}  // namespace fivevec
