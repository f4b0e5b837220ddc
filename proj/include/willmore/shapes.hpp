#pragma once

#include <functional>
#include <string>
#include <vector>

#include "willmore/vec2.hpp"

namespace willmore {

// Closed curve given as x(u), u in [0,1], x(0) = x(1), traversed
// counterclockwise so convex curves have positive curvature.
struct ParametricShape {
  std::string id;
  std::function<Vec2(double)> position;
  double exact_perimeter = 0.0;  // NaN when no closed form is used
};

// Signed distance to the shape boundary, positive inside (the inward
// normal is grad u / |grad u|).
struct ShapeSdf {
  std::string id;
  std::function<double(Vec2)> signed_distance;
};

struct ShapeParams {
  double circle_radius = 1.0;
  double ellipse_a = 1.0;  // x half-axis
  double ellipse_b = 2.0;  // y half-axis
  double square_side = 2.0;
  double astroid_scale = 1.0;
  // circle_in_ellipse: concentric circle inside an ellipse, short axis
  // slightly larger than the circle radius
  double pinch_ellipse_a = 1.0;
  double pinch_ellipse_b = 0.62;
  double pinch_circle_r = 0.6;
};

struct ShapePair {
  ParametricShape curve;
  ShapeSdf sdf;
};

// ids: circle | ellipse | flower | square | astroid | circle_in_ellipse.
// Throws std::invalid_argument on unknown id.
ShapePair make_shape(const std::string& id, const ShapeParams& params = {});

// r(t) = (2t + r0^4)^{1/4}, the shrink-free expanding-circle solution.
double circle_radius_exact(double t, double r0);

// Signed distance of p to a single closed polygonal loop, positive inside
// (even-odd crossing rule). Brute force over segments.
double polyline_signed_distance(const std::vector<Vec2>& loop, Vec2 p);

// Exact distance from p to the ellipse boundary (x/a)^2 + (y/b)^2 = 1,
// positive inside.
double ellipse_signed_distance(double a, double b, Vec2 p);

}  // namespace willmore
