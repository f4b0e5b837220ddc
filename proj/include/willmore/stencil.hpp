#pragma once

#include <array>
#include <utility>
#include <vector>

#include "willmore/grid.hpp"

namespace willmore {

// The four edge directions of a dual volume, fixed order.
inline constexpr std::array<std::pair<int, int>, 4> kAxisDirs{{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1},
}};

// Per-node regularized gradient data on the previous time level: the four
// directional gradients, Q^{rs} = sqrt(eps^2 + |grad|^2), the arithmetic
// average Q-bar, the reciprocal-sum aggregate Q* (1/Q* = sum 1/Q^{rs}),
// the tangential projections E^{rs} (symmetric 2x2, stored e11,e12,e22)
// and the nodal weighted curvature w.
//
// Entries are valid on nodes 1..nx-2 x 1..ny-2; the outermost ring keeps
// benign epsilon values and is never consumed by the interior scheme.
struct StencilQuantities {
  int nx = 0, ny = 0;
  double epsilon = 0.0;
  std::vector<std::array<Vec2, 4>> grad;
  std::vector<std::array<double, 4>> q_dir;
  std::vector<double> q_bar;
  std::vector<double> q_star;
  std::vector<std::array<std::array<double, 3>, 4>> emat;  // e11, e12, e22
  std::vector<double> w;

  int idx(int i, int j) const { return i + nx * j; }
  // edge average of w toward direction d
  double w_hat(int i, int j, int d) const {
    const auto [r, s] = kAxisDirs[d];
    return 0.5 * (w[idx(i, j)] + w[idx(i + r, j + s)]);
  }
};

StencilQuantities compute_stencil(const LevelSetField& f, double epsilon);
StencilQuantities compute_stencil_serial(const LevelSetField& f, double epsilon);

}  // namespace willmore
