#pragma once

#include <span>
#include <vector>

#include "masing/state.hpp"

namespace masing::planar {

/// Proper or touching intersection of closed segments [a,b] and [c,d].
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Self-intersection test for a closed polyline (last point joins the first).
/// Adjacent segments are excluded; O(n^2) with bounding-box rejection.
bool closed_polyline_self_intersects(std::span<const Vec2> pts);

/// True when two closed polylines share a point.
bool closed_polylines_intersect(std::span<const Vec2> a, std::span<const Vec2> b);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Symmetric Hausdorff distance between two closed polylines, measured from
/// every vertex of one to the segments of the other.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Winding number of a closed polyline around the origin.
int winding_number_about_origin(std::span<const Vec2> pts);

}  // namespace masing::planar
