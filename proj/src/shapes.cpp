#include "willmore/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace willmore {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return norm(p - a);
  double t = dot(p - a, ab) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

std::vector<Vec2> sample_loop(const std::function<Vec2(double)>& pos, int m) {
  std::vector<Vec2> pts(m);
  for (int i = 0; i < m; ++i) pts[i] = pos(static_cast<double>(i) / m);
  return pts;
}

double square_signed_distance(double side, Vec2 p) {
  const double hx = 0.5 * side;
  const double dx = std::abs(p.x) - hx;
  const double dy = std::abs(p.y) - hx;
  const double outside = std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
  const double inside = std::min(std::max(dx, dy), 0.0);
  return -(outside + inside);  // positive inside
}

}  // namespace

double polyline_signed_distance(const std::vector<Vec2>& loop, Vec2 p) {
  const size_t m = loop.size();
  double dist = std::numeric_limits<double>::infinity();
  bool inside = false;
  for (size_t i = 0; i < m; ++i) {
    const Vec2 a = loop[i];
    const Vec2 b = loop[(i + 1) % m];
    dist = std::min(dist, point_segment_distance(p, a, b));
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside ? dist : -dist;
}

double ellipse_signed_distance(double a, double b, Vec2 p) {
  const double px = std::abs(p.x);
  const double py = std::abs(p.y);
  // Nearest boundary point (a cos t, b sin t), t in [0, pi/2]: root of the
  // derivative of the squared distance. The derivative runs from <=0 at 0
  // to >=0 at pi/2 for px, py >= 0; bisection is enough.
  double lo = 0.0, hi = 0.5 * std::numbers::pi;
  auto deriv = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return (b * b - a * a) * s * c + a * px * s - b * py * c;
  };
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (deriv(mid) < 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double d = std::hypot(a * std::cos(t) - px, b * std::sin(t) - py);
  const double level = (p.x / a) * (p.x / a) + (p.y / b) * (p.y / b);
  return level <= 1.0 ? d : -d;
}

double circle_radius_exact(double t, double r0) {
  const double arg = 2.0 * t + r0 * r0 * r0 * r0;
  if (!(arg > 0.0)) throw std::invalid_argument("circle solution not defined");
  return std::pow(arg, 0.25);
}

ShapePair make_shape(const std::string& id, const ShapeParams& params) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (id == "circle") {
    const double R = params.circle_radius;
    ParametricShape shape{
        id, [R](double u) { return Vec2{R * std::cos(kTwoPi * u), R * std::sin(kTwoPi * u)}; },
        kTwoPi * R};
    ShapeSdf sdf{id, [R](Vec2 p) { return R - norm(p); }};
    return {shape, sdf};
  }
  if (id == "ellipse") {
    const double a = params.ellipse_a, b = params.ellipse_b;
    ParametricShape shape{
        id, [a, b](double u) { return Vec2{a * std::cos(kTwoPi * u), b * std::sin(kTwoPi * u)}; },
        nan};
    ShapeSdf sdf{id, [a, b](Vec2 p) { return ellipse_signed_distance(a, b, p); }};
    return {shape, sdf};
  }
  if (id == "flower") {
    auto pos = [](double u) {
      const double c4 = std::cos(4.0 * std::numbers::pi * u);
      const double rho = 0.5 * c4 * c4;
      return Vec2{1.0 - rho * std::cos(kTwoPi * u), 1.0 - rho * std::sin(kTwoPi * u)};
    };
    ParametricShape shape{id, pos, nan};
    auto loop = std::make_shared<std::vector<Vec2>>(sample_loop(pos, 8192));
    ShapeSdf sdf{id, [loop](Vec2 p) { return polyline_signed_distance(*loop, p); }};
    return {shape, sdf};
  }
  if (id == "square") {
    const double s = params.square_side;
    auto pos = [s](double u) {
      // counterclockwise by arclength from the bottom-right corner
      const double t = 4.0 * u;
      const double h = 0.5 * s;
      if (t < 1.0) return Vec2{h, -h + s * t};
      if (t < 2.0) return Vec2{h - s * (t - 1.0), h};
      if (t < 3.0) return Vec2{-h, h - s * (t - 2.0)};
      return Vec2{-h + s * (t - 3.0), -h};
    };
    ParametricShape shape{id, pos, 4.0 * s};
    ShapeSdf sdf{id, [s](Vec2 p) { return square_signed_distance(s, p); }};
    return {shape, sdf};
  }
  if (id == "astroid") {
    const double c = params.astroid_scale;
    auto pos = [c](double u) {
      const double ct = std::cos(kTwoPi * u), st = std::sin(kTwoPi * u);
      return Vec2{c * ct * ct * ct, c * st * st * st};
    };
    ParametricShape shape{id, pos, nan};
    auto loop = std::make_shared<std::vector<Vec2>>(sample_loop(pos, 8192));
    ShapeSdf sdf{id, [loop](Vec2 p) { return polyline_signed_distance(*loop, p); }};
    return {shape, sdf};
  }
  if (id == "circle_in_ellipse") {
    const double a = params.pinch_ellipse_a, b = params.pinch_ellipse_b;
    const double R = params.pinch_circle_r;
    // The evolving interface is the annulus boundary: positive between the
    // circle and the ellipse. The parametric form traces the outer ellipse
    // only; the preset is meaningful for the level set method alone.
    ParametricShape shape{
        id, [a, b](double u) { return Vec2{a * std::cos(kTwoPi * u), b * std::sin(kTwoPi * u)}; },
        nan};
    ShapeSdf sdf{id, [a, b, R](Vec2 p) {
                   return std::min(ellipse_signed_distance(a, b, p), norm(p) - R);
                 }};
    return {shape, sdf};
  }
  throw std::invalid_argument("unknown shape: " + id);
}

}  // namespace willmore
