#include "willmore/stencil.hpp"

#include <cmath>

namespace willmore {

namespace {

// corner average u^{rs}_ij = (u_ij + u_{i+r,j} + u_{i,j+s} + u_{i+r,j+s})/4
double corner_avg(const LevelSetField& f, int i, int j, int r, int s) {
  return 0.25 * (f.at(i, j) + f.at(i + r, j) + f.at(i, j + s) + f.at(i + r, j + s));
}

void stencil_at_node(const LevelSetField& f, double epsilon, StencilQuantities& st,
                     int i, int j) {
  const int id = st.idx(i, j);
  const double h = f.h;
  double qsum = 0.0, qinv = 0.0;
  for (int d = 0; d < 4; ++d) {
    const auto [r, s] = kAxisDirs[d];
    Vec2 g;
    if (s == 0) {
      g.x = r * (f.at(i + r, j) - f.at(i, j)) / h;
      g.y = (corner_avg(f, i, j, r, 1) - corner_avg(f, i, j, r, -1)) / h;
    } else {
      g.x = (corner_avg(f, i, j, 1, s) - corner_avg(f, i, j, -1, s)) / h;
      g.y = s * (f.at(i, j + s) - f.at(i, j)) / h;
    }
    const double q = std::sqrt(epsilon * epsilon + norm_sq(g));
    st.grad[id][d] = g;
    st.q_dir[id][d] = q;
    qsum += q;
    qinv += 1.0 / q;
    const double q3 = q * q * q;
    st.emat[id][d] = {(1.0 - g.x * g.x / (q * q)) / q, -g.x * g.y / q3,
                      (1.0 - g.y * g.y / (q * q)) / q};
  }
  st.q_bar[id] = 0.25 * qsum;
  st.q_star[id] = 1.0 / qinv;
  double wsum = 0.0;
  for (int d = 0; d < 4; ++d) {
    const auto [r, s] = kAxisDirs[d];
    wsum += (f.at(i + r, j + s) - f.at(i, j)) / st.q_dir[id][d];
  }
  st.w[id] = st.q_bar[id] / (h * h) * wsum;
}

StencilQuantities make_empty(const LevelSetField& f, double epsilon) {
  StencilQuantities st;
  st.nx = f.nx();
  st.ny = f.ny();
  st.epsilon = epsilon;
  const size_t n = static_cast<size_t>(st.nx) * st.ny;
  st.grad.assign(n, {});
  st.q_dir.assign(n, {epsilon, epsilon, epsilon, epsilon});
  st.q_bar.assign(n, epsilon);
  st.q_star.assign(n, 0.25 * epsilon);
  st.emat.assign(n, {{{1.0 / epsilon, 0.0, 1.0 / epsilon},
                      {1.0 / epsilon, 0.0, 1.0 / epsilon},
                      {1.0 / epsilon, 0.0, 1.0 / epsilon},
                      {1.0 / epsilon, 0.0, 1.0 / epsilon}}});
  st.w.assign(n, 0.0);
  return st;
}

}  // namespace

StencilQuantities compute_stencil(const LevelSetField& f, double epsilon) {
  StencilQuantities st = make_empty(f, epsilon);
#pragma omp parallel for schedule(static)
  for (int j = 1; j < st.ny - 1; ++j)
    for (int i = 1; i < st.nx - 1; ++i) stencil_at_node(f, epsilon, st, i, j);
  return st;
}

StencilQuantities compute_stencil_serial(const LevelSetField& f, double epsilon) {
  StencilQuantities st = make_empty(f, epsilon);
  for (int j = 1; j < st.ny - 1; ++j)
    for (int i = 1; i < st.nx - 1; ++i) stencil_at_node(f, epsilon, st, i, j);
  return st;
}

}  // namespace willmore
