#pragma once

#include <span>
#include <vector>

namespace almostconv {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

/// Andrew's monotone chain. Counter-clockwise, no repeated closing vertex,
/// collinear points dropped. Degenerate inputs give one or two vertices.
std::vector<Point2> convex_hull(std::vector<Point2> points);

/// Euclidean distance from q to a hull produced by convex_hull (0 inside).
double distance_to_hull(std::span<const Point2> hull, Point2 q);

}  // namespace almostconv
