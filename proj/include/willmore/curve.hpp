#pragma once

#include <functional>
#include <vector>

#include "willmore/vec2.hpp"

namespace willmore {

// Closed polygonal curve discretized as flowing finite volumes.
// Arrays are stored 0-based; slot i-1 holds the quantity with logical
// index i in 1..n. All neighbor access wraps periodically, so the ghost
// conventions x_0 = x_n, x_{n+1} = x_1, ... hold by construction.
//
// r[i] is the evolved local length of volume [x_{i-1}, x_i]; it tracks
// |x_i - x_{i-1}| but is advanced through eta = ln r, not recomputed
// from positions.
struct DiscreteCurve {
  std::vector<Vec2> nodes;
  std::vector<double> r;
  std::vector<double> q;      // dual lengths, q_i = (r_i + r_{i+1})/2
  std::vector<double> k;      // signed curvature, per volume
  std::vector<double> eta;    // ln(r_i)
  std::vector<double> alpha;  // tangential velocity of node x_i; alpha_0 == 0
  std::vector<double> beta;   // normal velocity, per volume
  double total_length = 0.0;

  int n() const { return static_cast<int>(nodes.size()); }

  int wrap(int i) const {
    const int m = n();
    i %= m;
    return i < 0 ? i + m : i;
  }

  const Vec2& node(int i) const { return nodes[wrap(i)]; }
  double rr(int i) const { return r[wrap(i)]; }
  double qq(int i) const { return q[wrap(i)]; }
  double kk(int i) const { return k[wrap(i)]; }
  // tangential velocity of node x_i, 0 <= i <= n; the anchor alpha_0 is 0
  double alpha_at(int i) const { return i == 0 ? 0.0 : alpha[i - 1]; }
};

// Samples shape(u), u = i/n, and derives all volume quantities.
// Throws on coincident consecutive nodes ("degenerate discretization").
DiscreteCurve init_from_parametric(const std::function<Vec2(double)>& shape, int n);

// Same derivation from an explicit closed vertex loop (consecutive
// duplicates removed first). Used to feed extracted contours through the
// curve machinery.
DiscreteCurve curve_from_nodes(std::vector<Vec2> nodes);

// beta_i = -(1/r_i)[(k_{i+1}-k_i)/q_i - (k_i-k_{i-1})/q_{i-1}] - k_i^3/2
std::vector<double> normal_velocity(const DiscreteCurve& c);

// (1/2) sum k_i^2 r_i
double elastic_energy(const DiscreteCurve& c);

// B = (1/L) sum r_i k_i beta_i
double curve_average_kbeta(const DiscreteCurve& c);

}  // namespace willmore
