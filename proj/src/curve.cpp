#include "willmore/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

namespace {

// Three-point discrete curvature at node b: the signed turning angle of
// the segment pair over the dual length around b. Exact to second order;
// on an n-gon inscribed in the unit circle it gives (pi/n)/sin(pi/n).
double turning_angle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 u = b - a;
  const Vec2 v = c - b;
  return std::atan2(cross(u, v), dot(u, v));
}

void derive_volume_quantities(DiscreteCurve& c) {
  const int n = c.n();
  c.r.assign(n, 0.0);
  c.q.assign(n, 0.0);
  c.k.assign(n, 0.0);
  c.eta.assign(n, 0.0);
  c.alpha.assign(n, 0.0);
  c.beta.assign(n, 0.0);
  c.total_length = 0.0;
  for (int i = 0; i < n; ++i) {
    const double len = norm(c.nodes[i] - c.node(i - 1));
    if (!(len > 0.0)) throw std::runtime_error("degenerate discretization");
    c.r[i] = len;
    c.eta[i] = std::log(len);
    c.total_length += len;
  }
  for (int i = 0; i < n; ++i) c.q[i] = 0.5 * (c.r[i] + c.rr(i + 1));
  for (int i = 0; i < n; ++i)
    c.k[i] = turning_angle(c.node(i - 1), c.nodes[i], c.node(i + 1)) / c.q[i];
}

}  // namespace

DiscreteCurve init_from_parametric(const std::function<Vec2(double)>& shape, int n) {
  if (n < 8) throw std::invalid_argument("need at least 8 nodes");
  DiscreteCurve c;
  c.nodes.resize(n);
  for (int i = 0; i < n; ++i) c.nodes[i] = shape(static_cast<double>(i + 1) / n);
  derive_volume_quantities(c);
  return c;
}

DiscreteCurve curve_from_nodes(std::vector<Vec2> nodes) {
  std::vector<Vec2> cleaned;
  cleaned.reserve(nodes.size());
  for (const Vec2& p : nodes) {
    if (cleaned.empty() || norm(p - cleaned.back()) > 1e-12) cleaned.push_back(p);
  }
  while (cleaned.size() > 1 && norm(cleaned.front() - cleaned.back()) <= 1e-12)
    cleaned.pop_back();
  if (cleaned.size() < 4) throw std::runtime_error("degenerate discretization");
  DiscreteCurve c;
  c.nodes = std::move(cleaned);
  derive_volume_quantities(c);
  return c;
}

std::vector<double> normal_velocity(const DiscreteCurve& c) {
  const int n = c.n();
  std::vector<double> beta(n);
  for (int i = 0; i < n; ++i) {
    const double diff =
        (c.kk(i + 1) - c.k[i]) / c.q[i] - (c.k[i] - c.kk(i - 1)) / c.qq(i - 1);
    beta[i] = -diff / c.r[i] - 0.5 * c.k[i] * c.k[i] * c.k[i];
  }
  return beta;
}

double elastic_energy(const DiscreteCurve& c) {
  double e = 0.0;
  for (int i = 0; i < c.n(); ++i) e += c.k[i] * c.k[i] * c.r[i];
  return 0.5 * e;
}

double curve_average_kbeta(const DiscreteCurve& c) {
  double s = 0.0;
  for (int i = 0; i < c.n(); ++i) s += c.r[i] * c.k[i] * c.beta[i];
  return s / c.total_length;
}

}  // namespace willmore
