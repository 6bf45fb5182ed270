#include "masing/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace masing::planar {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

struct Box2 {
  double xlo, xhi, ylo, yhi;
  bool overlaps(const Box2& o) const {
    return xlo <= o.xhi && o.xlo <= xhi && ylo <= o.yhi && o.ylo <= yhi;
  }
};

Box2 segment_box(const Vec2& a, const Vec2& b) {
  return {std::min(a[0], b[0]), std::max(a[0], b[0]), std::min(a[1], b[1]),
          std::max(a[1], b[1])};
}

std::vector<Box2> segment_boxes(std::span<const Vec2> pts) {
  std::vector<Box2> boxes(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    boxes[i] = segment_box(pts[i], pts[(i + 1) % pts.size()]);
  }
  return boxes;
}

}  // namespace

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

bool closed_polyline_self_intersects(std::span<const Vec2> pts) {
  const std::size_t n = pts.size();
  if (n < 4) return false;
  const auto boxes = segment_boxes(pts);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (!boxes[i].overlaps(boxes[j])) continue;
      if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return true;
    }
  }
  return false;
}

bool closed_polylines_intersect(std::span<const Vec2> a, std::span<const Vec2> b) {
  const auto ba = segment_boxes(a);
  const auto bb = segment_boxes(b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!ba[i].overlaps(bb[j])) continue;
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return false;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2, 0.0, 1.0);
  }
  return std::hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy));
}

namespace {

double directed_hausdorff(std::span<const Vec2> from, std::span<const Vec2> to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % to.size()]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

int winding_number_about_origin(std::span<const Vec2> pts) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    total += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace masing::planar
