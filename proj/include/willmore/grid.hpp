#pragma once

#include <vector>

#include "willmore/vec2.hpp"

namespace willmore {

// Scalar field u on a uniform square-celled node grid over
// [a1, a2] x [b1, b2]: nodes x_ij = origin + (i h, j h),
// i = 0..n1, j = 0..n2, with a1 + n1 h = a2 and b1 + n2 h = b2.
struct LevelSetField {
  int n1 = 0, n2 = 0;  // cell counts per direction
  double h = 0.0;
  Vec2 origin;  // (a1, b1)
  std::vector<double> u;  // (n1+1) * (n2+1) node values, i fastest

  int nx() const { return n1 + 1; }
  int ny() const { return n2 + 1; }
  int idx(int i, int j) const { return i + nx() * j; }
  double& at(int i, int j) { return u[idx(i, j)]; }
  double at(int i, int j) const { return u[idx(i, j)]; }
  Vec2 point(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  Vec2 extent() const { return {origin.x + n1 * h, origin.y + n2 * h}; }
};

// Square domain [lo, hi]^2 split into n x n cells.
inline LevelSetField make_field(double lo, double hi, int n) {
  LevelSetField f;
  f.n1 = f.n2 = n;
  f.h = (hi - lo) / n;
  f.origin = {lo, lo};
  f.u.assign(static_cast<size_t>(f.nx()) * f.ny(), 0.0);
  return f;
}

}  // namespace willmore
