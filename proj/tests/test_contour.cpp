#include <doctest.h>

#include <cmath>

#include "willmore/contour.hpp"
#include "willmore/curve.hpp"
#include "willmore/shapes.hpp"

using namespace willmore;

TEST_CASE("plane field gives one exact open contour") {
  LevelSetField f = make_field(0, 8, 8);  // unit spacing
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) f.at(i, j) = f.point(i, j).x - 0.5;
  const auto contours = extract_zero_set(f);
  REQUIRE(contours.size() == 1);
  CHECK(!contours[0].closed);
  CHECK(contours[0].pts.size() == 9);
  for (const Vec2& p : contours[0].pts) CHECK(p.x == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("circle contour vertices sit on the circle") {
  const auto sdf = make_shape("circle").sdf;
  LevelSetField f = make_field(-2, 2, 100);
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) f.at(i, j) = sdf.signed_distance(f.point(i, j));
  const auto contours = extract_zero_set(f);
  REQUIRE(contours.size() == 1);
  CHECK(contours[0].closed);
  for (const Vec2& p : contours[0].pts) CHECK(std::abs(norm(p) - 1.0) < 5e-3);
  CHECK(polyline_length(contours[0]) ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(2e-3));
}

TEST_CASE("contours keep the positive side on the left") {
  // u > 0 inside the circle; interior-on-left means counterclockwise
  const auto sdf = make_shape("circle").sdf;
  LevelSetField f = make_field(-2, 2, 40);
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) f.at(i, j) = sdf.signed_distance(f.point(i, j));
  const auto contours = extract_zero_set(f);
  REQUIRE(contours.size() == 1);
  double area2 = 0.0;  // shoelace, positive when counterclockwise
  const auto& pts = contours[0].pts;
  for (size_t i = 0; i < pts.size(); ++i)
    area2 += cross(pts[i], pts[(i + 1) % pts.size()]);
  CHECK(area2 > 0.0);
}

TEST_CASE("two disjoint regions give two closed contours") {
  LevelSetField f = make_field(-2, 2, 80);
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const Vec2 p = f.point(i, j);
      const double d1 = 0.5 - std::hypot(p.x - 1.0, p.y);
      const double d2 = 0.5 - std::hypot(p.x + 1.0, p.y);
      f.at(i, j) = std::max(d1, d2);
    }
  const auto contours = extract_zero_set(f);
  CHECK(contours.size() == 2);
  for (const auto& c : contours) CHECK(c.closed);
}

TEST_CASE("no sign change, no contours") {
  LevelSetField f = make_field(-1, 1, 10);
  for (double& v : f.u) v = 1.0;
  CHECK(extract_zero_set(f).empty());
}

TEST_CASE("distance helpers") {
  Polyline a{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
  Polyline b = a;
  CHECK(hausdorff_distance({a}, {b}) == 0.0);
  CHECK(mean_distance({a}, {b}) == 0.0);
  for (Vec2& p : b.pts) p = p + Vec2{0.25, 0.0};
  CHECK(hausdorff_distance({a}, {b}) == doctest::Approx(0.25));
  CHECK(distance_to_polylines({0.5, 0.5}, {a}) == doctest::Approx(0.5));
}

TEST_CASE("extracted contours feed the curve machinery") {
  const auto sdf = make_shape("circle").sdf;
  LevelSetField f = make_field(-2, 2, 100);
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) f.at(i, j) = sdf.signed_distance(f.point(i, j));
  const auto contours = extract_zero_set(f);
  const DiscreteCurve c = curve_from_nodes(contours[0].pts);
  // elastic energy of the unit circle is pi
  CHECK(std::abs(elastic_energy(c) - std::numbers::pi) / std::numbers::pi < 0.05);
}
