#include "oracle_levelset.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore::oracle {

namespace {

int dir_index(int r, int s) {
  for (int d = 0; d < 4; ++d)
    if (kAxisDirs[d].first == r && kAxisDirs[d].second == s) return d;
  throw std::logic_error("not an axis direction");
}

struct View {
  const StencilQuantities& st;
  // E^{rs}_{kl} at node (i,j), 1-based matrix indices, symmetric storage
  double E(int i, int j, int r, int s, int k, int l) const {
    const auto& m = st.emat[st.idx(i, j)][dir_index(r, s)];
    if (k == 1 && l == 1) return m[0];
    if (k == 2 && l == 2) return m[2];
    return m[1];
  }
  double Q(int i, int j, int r, int s) const {
    return st.q_dir[st.idx(i, j)][dir_index(r, s)];
  }
  double Qbar(int i, int j) const { return st.q_bar[st.idx(i, j)]; }
  double Qstar(int i, int j) const { return st.q_star[st.idx(i, j)]; }
  double what(int i, int j, int r, int s) const {
    return 0.5 * (st.w[st.idx(i, j)] + st.w[st.idx(i + r, j + s)]);
  }
};

int sgn(int v) { return (v > 0) - (v < 0); }

}  // namespace

double coefficient(const LevelSetField& f, const StencilQuantities& st, double tau,
                   int i, int j, int r, int s) {
  const View v{st};
  const double h = f.h;
  const double h2 = h * h, h4 = h2 * h2;
  const int ar = std::abs(r), as = std::abs(s);

  if (r == 0 && s == 0) {
    double sum = 0.0;
    for (const auto& [rr, ss] : kAxisDirs) {
      const double wh = v.what(i, j, rr, ss);
      const double q = v.Q(i, j, rr, ss);
      sum += h2 * wh * wh / (2.0 * q * q * q);
      sum += v.E(i, j, rr, ss, 1 + std::abs(ss), 2 - std::abs(rr)) *
             (v.Qbar(i + rr, j + ss) / v.Q(i + rr, j + ss, -rr, -ss) +
              v.Qbar(i, j) / v.Qstar(i, j));
      // transcription fix: the neighbor at (i+s, j+r) is reached from its
      // own node along (-s, -r), not (-r, -s)
      sum += 0.25 * v.E(i, j, rr, ss, 1 + std::abs(ss), 1 + std::abs(rr)) *
             (v.Qbar(i + ss, j + rr) / v.Q(i + ss, j + rr, -ss, -rr) -
              v.Qbar(i - ss, j - rr) / v.Q(i - ss, j - rr, ss, rr));
    }
    return 1.0 + tau * v.Qbar(i, j) / h4 * sum;
  }

  if (ar + as == 1) {
    const double wh = v.what(i, j, r, s);
    const double q = v.Q(i, j, r, s);
    const double term =
        -v.E(i, j, r, s, 1 + as, 2 - ar) *
            (v.Qbar(i + r, j + s) / v.Qstar(i + r, j + s) + v.Qbar(i, j) / q) +
        0.25 * v.E(i, j, r, s, 1 + as, 1 + ar) *
            (v.Qbar(i + r + s, j + r + s) / v.Q(i + r + s, j + r + s, -s, -r) -
             v.Qbar(i + r - s, j - r + s) / v.Q(i + r - s, j - r + s, s, r)) +
        0.25 * v.E(i, j, s, r, 1 + ar, 1 + as) *
            (v.Qbar(i + r + s, j + r + s) / v.Q(i + r + s, j + r + s, -s, -r) -
             v.Qbar(i + r, j + s) / v.Qstar(i + r, j + s)) -
        0.25 * v.E(i, j, -s, -r, 1 + ar, 1 + as) *
            (v.Qbar(i + r - s, j - r + s) / v.Q(i + r - s, j - r + s, s, r) -
             v.Qbar(i + r, j + s) / v.Qstar(i + r, j + s)) -
        (v.E(i, j, -r, -s, 1 + as, 2 - ar) + v.E(i, j, s, r, 1 + ar, 2 - as) +
         v.E(i, j, -s, -r, 1 + ar, 2 - as)) *
            v.Qbar(i, j) / q -
        h2 * wh * wh / (2.0 * q * q * q);
    return tau * v.Qbar(i, j) / h4 * term;
  }

  if (ar == 1 && as == 1) {
    // transcription fix: the E_11 and E_22 terms carry no rs sign (the
    // compact form over-applies the prefactor); the quarter terms do.
    const double main = v.E(i, j, r, 0, 1, 1) * v.Qbar(i + r, j) / v.Q(i + r, j, 0, s) +
                        v.E(i, j, 0, s, 2, 2) * v.Qbar(i, j + s) / v.Q(i, j + s, r, 0);
    const double quarter =
        0.25 * v.E(i, j, r, 0, 1, 2) *
            (v.Qbar(i, j + s) / v.Q(i, j + s, r, 0) -
             v.Qbar(i + r, j + s) / v.Qstar(i + r, j + s)) +
        0.25 * v.E(i, j, 0, s, 2, 1) *
            (v.Qbar(i + r, j) / v.Q(i + r, j, 0, s) -
             v.Qbar(i + r, j + s) / v.Qstar(i + r, j + s)) -
        0.25 * v.E(i, j, -r, 0, 1, 2) * v.Qbar(i, j + s) / v.Q(i, j + s, r, 0) -
        0.25 * v.E(i, j, 0, -s, 2, 1) * v.Qbar(i + r, j) / v.Q(i + r, j, 0, s);
    return tau * v.Qbar(i, j) / h4 * (main + r * s * quarter);
  }

  const int br = sgn(r), bs = sgn(s);
  const int tr = r - br, ts = s - bs;
  if (ar + as == 2) {  // distance-2 along an axis
    const double factor = v.Qbar(i + br, j + bs) / v.Q(i + br, j + bs, tr, ts);
    const double term = v.E(i, j, br, bs, 1 + std::abs(bs), 1 + std::abs(bs)) +
                        0.25 * v.E(i, j, bs, br, 2, 1) -
                        0.25 * v.E(i, j, -bs, -br, 2, 1);
    return tau * v.Qbar(i, j) / h4 * term * factor;
  }

  // |r| + |s| == 3
  return sgn(r * s) * tau / (4.0 * h4) * v.Qbar(i, j) *
         v.Qbar(i + br, j + bs) / v.Q(i + br, j + bs, tr, ts) *
         (v.E(i, j, br, 0, 1, 2) + v.E(i, j, 0, bs, 2, 1));
}

SparseSystem assemble(const LevelSetField& f, const StencilQuantities& st, double tau) {
  SparseSystem sys;
  sys.nx = f.nx();
  sys.ny = f.ny();
  sys.rows.resize(static_cast<size_t>(sys.nx) * sys.ny);
  sys.rhs.assign(static_cast<size_t>(sys.nx) * sys.ny, 0.0);
  for (auto& row : sys.rows) row.fill(0.0);
  for (int j = 2; j < sys.ny - 2; ++j)
    for (int i = 2; i < sys.nx - 2; ++i) {
      auto& row = sys.rows[sys.node(i, j)];
      for (int slot = 0; slot < 21; ++slot) {
        const auto [r, s] = kStencilOffsets[slot];
        row[slot] = coefficient(f, st, tau, i, j, r, s);
      }
      sys.rhs[sys.node(i, j)] = f.at(i, j);
    }
  return sys;
}

}  // namespace willmore::oracle
