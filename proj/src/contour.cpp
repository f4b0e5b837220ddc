#include "willmore/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace willmore {

namespace {

// A cell edge: the grid node at its low corner plus its axis
// (0 horizontal, 1 vertical). Every crossing point lies on one edge.
struct EdgeKey {
  int i = 0, j = 0, axis = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

struct Segment {
  EdgeKey from, to;
};

// cell-local edge ids: 0 bottom, 1 right, 2 top, 3 left
EdgeKey cell_edge(int ci, int cj, int e) {
  switch (e) {
    case 0: return {ci, cj, 0};
    case 1: return {ci + 1, cj, 1};
    case 2: return {ci, cj + 1, 0};
    default: return {ci, cj, 1};
  }
}

Vec2 crossing_point(const LevelSetField& f, const EdgeKey& e) {
  const double ua = f.at(e.i, e.j);
  const double ub = e.axis == 0 ? f.at(e.i + 1, e.j) : f.at(e.i, e.j + 1);
  const double t = ua / (ua - ub);
  const Vec2 a = f.point(e.i, e.j);
  return e.axis == 0 ? Vec2{a.x + t * f.h, a.y} : Vec2{a.x, a.y + t * f.h};
}

}  // namespace

std::vector<Polyline> extract_zero_set(const LevelSetField& f) {
  const int nx = f.nx(), ny = f.ny();
  // directed segments, keyed by their entry edge
  std::map<EdgeKey, Segment> by_from;
  std::map<EdgeKey, EdgeKey> from_by_to;

  auto emit = [&](int ci, int cj, int e_from, int e_to) {
    const Segment seg{cell_edge(ci, cj, e_from), cell_edge(ci, cj, e_to)};
    by_from[seg.from] = seg;
    from_by_to[seg.to] = seg.from;
  };

  for (int cj = 0; cj + 1 < ny; ++cj)
    for (int ci = 0; ci + 1 < nx; ++ci) {
      const double u00 = f.at(ci, cj), u10 = f.at(ci + 1, cj);
      const double u11 = f.at(ci + 1, cj + 1), u01 = f.at(ci, cj + 1);
      int mask = 0;
      if (u00 >= 0.0) mask |= 1;
      if (u10 >= 0.0) mask |= 2;
      if (u11 >= 0.0) mask |= 4;
      if (u01 >= 0.0) mask |= 8;
      switch (mask) {
        case 0:
        case 15: break;
        case 1: emit(ci, cj, 0, 3); break;
        case 2: emit(ci, cj, 1, 0); break;
        case 4: emit(ci, cj, 2, 1); break;
        case 8: emit(ci, cj, 3, 2); break;
        case 3: emit(ci, cj, 1, 3); break;
        case 6: emit(ci, cj, 2, 0); break;
        case 12: emit(ci, cj, 3, 1); break;
        case 9: emit(ci, cj, 0, 2); break;
        case 7: emit(ci, cj, 2, 3); break;
        case 11: emit(ci, cj, 1, 2); break;
        case 13: emit(ci, cj, 0, 1); break;
        case 14: emit(ci, cj, 3, 0); break;
        case 5:  // saddle, pair by the cell-average sign
          if (u00 + u10 + u11 + u01 >= 0.0) {
            emit(ci, cj, 0, 1);
            emit(ci, cj, 2, 3);
          } else {
            emit(ci, cj, 0, 3);
            emit(ci, cj, 2, 1);
          }
          break;
        case 10:
          if (u00 + u10 + u11 + u01 >= 0.0) {
            emit(ci, cj, 3, 0);
            emit(ci, cj, 1, 2);
          } else {
            emit(ci, cj, 1, 0);
            emit(ci, cj, 3, 2);
          }
          break;
      }
    }

  std::vector<Polyline> out;
  while (!by_from.empty()) {
    // walk back to a chain start (an entry edge no segment exits into)
    EdgeKey start = by_from.begin()->first;
    {
      EdgeKey cur = start;
      while (true) {
        auto pred = from_by_to.find(cur);
        if (pred == from_by_to.end() || pred->second == start) break;  // open end or loop
        cur = pred->second;
      }
      start = cur;
    }
    Polyline line;
    line.pts.push_back(crossing_point(f, start));
    EdgeKey cur = start;
    while (true) {
      auto it = by_from.find(cur);
      if (it == by_from.end()) break;  // open chain hit the boundary
      const EdgeKey next = it->second.to;
      by_from.erase(it);
      from_by_to.erase(next);
      if (next == start) {
        line.closed = true;
        break;
      }
      line.pts.push_back(crossing_point(f, next));
      cur = next;
    }
    if (line.pts.size() >= 2 || line.closed) out.push_back(std::move(line));
  }
  return out;
}

double polyline_length(const Polyline& p) {
  double len = 0.0;
  for (size_t i = 0; i + 1 < p.pts.size(); ++i) len += norm(p.pts[i + 1] - p.pts[i]);
  if (p.closed && p.pts.size() > 1) len += norm(p.pts.front() - p.pts.back());
  return len;
}

namespace {

double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

}  // namespace

double distance_to_polylines(Vec2 p, const std::vector<Polyline>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Polyline& line : set) {
    for (size_t i = 0; i + 1 < line.pts.size(); ++i)
      best = std::min(best, point_segment_dist(p, line.pts[i], line.pts[i + 1]));
    if (line.closed && line.pts.size() > 1)
      best = std::min(best, point_segment_dist(p, line.pts.back(), line.pts.front()));
  }
  return best;
}

double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b) {
  double worst = 0.0;
  for (const Polyline& line : a)
    for (const Vec2& p : line.pts) worst = std::max(worst, distance_to_polylines(p, b));
  for (const Polyline& line : b)
    for (const Vec2& p : line.pts) worst = std::max(worst, distance_to_polylines(p, a));
  return worst;
}

double mean_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b) {
  double sum = 0.0;
  long count = 0;
  for (const Polyline& line : a)
    for (const Vec2& p : line.pts) {
      sum += distance_to_polylines(p, b);
      ++count;
    }
  for (const Polyline& line : b)
    for (const Vec2& p : line.pts) {
      sum += distance_to_polylines(p, a);
      ++count;
    }
  return count > 0 ? sum / count : 0.0;
}

}  // namespace willmore
