#pragma once

#include <vector>

#include "willmore/grid.hpp"
#include "willmore/vec2.hpp"

namespace willmore {

struct Polyline {
  std::vector<Vec2> pts;
  bool closed = false;
};

// Marching squares with linear edge interpolation. Contours are directed
// with the u >= 0 side on the left; saddle cells are resolved by the
// cell-average sign. Closed loops stay closed, boundary-touching chains
// come back open. Deterministic scan order.
std::vector<Polyline> extract_zero_set(const LevelSetField& f);

double polyline_length(const Polyline& p);

// distance from a point to the nearest segment of any polyline
double distance_to_polylines(Vec2 p, const std::vector<Polyline>& set);

// symmetric vertex-to-polyline Hausdorff distance
double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b);

// symmetrized mean vertex-to-polyline distance
double mean_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b);

}  // namespace willmore
