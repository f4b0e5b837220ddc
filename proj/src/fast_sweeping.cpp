#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "willmore/levelset.hpp"

namespace willmore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Godunov update for |grad d| = 1 from the smaller axis neighbors.
double eikonal_update(double a, double b, double h) {
  if (a > b) std::swap(a, b);
  if (b - a >= h) return a + h;
  return 0.5 * (a + b + std::sqrt(2.0 * h * h - (a - b) * (a - b)));
}

}  // namespace

LevelSetField redistance(const LevelSetField& f) {
  const int nx = f.nx(), ny = f.ny();
  const double h = f.h;
  std::vector<double> dist(static_cast<size_t>(nx) * ny, kInf);
  std::vector<char> frozen(static_cast<size_t>(nx) * ny, 0);

  // freeze the interface band from linearly interpolated crossings
  bool any_interface = false;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double u0 = f.at(i, j);
      if (u0 == 0.0) {
        dist[f.idx(i, j)] = 0.0;
        frozen[f.idx(i, j)] = 1;
        any_interface = true;
        continue;
      }
      double dx = kInf, dy = kInf;
      for (int dir : {-1, 1}) {
        if (i + dir >= 0 && i + dir < nx) {
          const double u1 = f.at(i + dir, j);
          if (u0 * u1 < 0.0) dx = std::min(dx, h * std::abs(u0) / (std::abs(u0) + std::abs(u1)));
        }
        if (j + dir >= 0 && j + dir < ny) {
          const double u1 = f.at(i, j + dir);
          if (u0 * u1 < 0.0) dy = std::min(dy, h * std::abs(u0) / (std::abs(u0) + std::abs(u1)));
        }
      }
      if (dx < kInf || dy < kInf) {
        const double d = (dx < kInf && dy < kInf) ? dx * dy / std::hypot(dx, dy)
                                                  : std::min(dx, dy);
        dist[f.idx(i, j)] = d;
        frozen[f.idx(i, j)] = 1;
        any_interface = true;
      }
    }
  if (!any_interface) throw std::runtime_error("empty interface");

  auto sweep = [&](int i0, int i1, int di, int j0, int j1, int dj) {
    double max_change = 0.0;
    for (int j = j0; j != j1; j += dj)
      for (int i = i0; i != i1; i += di) {
        const int id = f.idx(i, j);
        if (frozen[id]) continue;
        const double a = std::min(i > 0 ? dist[f.idx(i - 1, j)] : kInf,
                                  i < nx - 1 ? dist[f.idx(i + 1, j)] : kInf);
        const double b = std::min(j > 0 ? dist[f.idx(i, j - 1)] : kInf,
                                  j < ny - 1 ? dist[f.idx(i, j + 1)] : kInf);
        if (a == kInf && b == kInf) continue;
        const double cand = (a == kInf || b == kInf) ? std::min(a, b) + h
                                                     : eikonal_update(a, b, h);
        if (cand < dist[id]) {
          max_change = std::max(max_change, dist[id] == kInf ? cand : dist[id] - cand);
          dist[id] = cand;
        }
      }
    return max_change;
  };

  const double tol = 1e-10 * h;
  for (int pass = 0; pass < 100; ++pass) {
    double change = 0.0;
    change = std::max(change, sweep(0, nx, 1, 0, ny, 1));
    change = std::max(change, sweep(nx - 1, -1, -1, 0, ny, 1));
    change = std::max(change, sweep(0, nx, 1, ny - 1, -1, -1));
    change = std::max(change, sweep(nx - 1, -1, -1, ny - 1, -1, -1));
    if (change < tol) break;
  }

  LevelSetField out = f;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int id = f.idx(i, j);
      const double sgn = f.u[id] > 0.0 ? 1.0 : (f.u[id] < 0.0 ? -1.0 : 0.0);
      out.u[id] = sgn * dist[id];
    }
  return out;
}

}  // namespace willmore
