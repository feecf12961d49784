#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "hotspots/geometry.hpp"

namespace hotspots::geometry::detail {

struct BBox {
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void add(Vec2 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  void merge(const BBox& o) {
    add(o.lo);
    add(o.hi);
  }
};

bool angle_in_arc(const Arc& a, double theta);
double distance_to_curve(const Curve& c, Vec2 p);
BBox curve_bbox(const Curve& c);
BBox chain_bbox(const Chain& chain);

/// Closed polygon through the chain (last point not repeated).
std::vector<Vec2> polygonize(const Chain& chain, double step);
std::vector<Vec2> boundary_samples(const DomainSpec& spec, double step);
/// Largest side of the outer bounding box; a lower bound for the diameter.
double quick_diameter(const DomainSpec& spec);

double area_in_quadrant_polygonal(const DomainSpec& spec, double step);

}  // namespace hotspots::geometry::detail
