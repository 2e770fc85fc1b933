#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace psc {

constexpr double kGeomEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const = default;
};

inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

// Angle in [0, 2*pi).
inline double angle_of(const Vec2& v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0) a += 2.0 * M_PI;
  return a;
}

inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Strict interior crossing of two closed segments, endpoints excluded.
// Segments that merely touch at an endpoint do not count.
inline bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    double v = cross(q - p, r - p);
    if (v > kGeomEps) return 1;
    if (v < -kGeomEps) return -1;
    return 0;
  };
  int o1 = orient(a, b, c);
  int o2 = orient(a, b, d);
  int o3 = orient(c, d, a);
  int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  // Collinear overlap counts as a crossing unless it is a shared endpoint only.
  auto on_seg = [&](const Vec2& p, const Vec2& q, const Vec2& r) {
    if (orient(p, q, r) != 0) return false;
    return r.x >= std::min(p.x, q.x) - kGeomEps && r.x <= std::max(p.x, q.x) + kGeomEps &&
           r.y >= std::min(p.y, q.y) - kGeomEps && r.y <= std::max(p.y, q.y) + kGeomEps;
  };
  auto same = [](const Vec2& p, const Vec2& q) {
    return std::abs(p.x - q.x) < kGeomEps && std::abs(p.y - q.y) < kGeomEps;
  };
  auto touches = [&](const Vec2& p) { return same(p, a) || same(p, b); };
  if (o1 == 0 && on_seg(a, b, c) && !touches(c)) return true;
  if (o2 == 0 && on_seg(a, b, d) && !touches(d)) return true;
  if (o3 == 0 && on_seg(c, d, a) && !(same(a, c) || same(a, d))) return true;
  if (o4 == 0 && on_seg(c, d, b) && !(same(b, c) || same(b, d))) return true;
  return false;
}

// Twice the signed area of a polygon (ccw positive).
inline double signed_area2(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    s += cross(p, q);
  }
  return s;
}

// Winding number of a closed polyline around point p. Returns a large sentinel
// via *on_boundary when p lies on the polyline (within tolerance).
inline int winding_number(const std::vector<Vec2>& poly, const Vec2& p, bool* on_boundary) {
  *on_boundary = false;
  double total = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    Vec2 a = poly[i] - p;
    Vec2 b = poly[(i + 1) % poly.size()] - p;
    double na = norm(a), nb = norm(b);
    if (na < kGeomEps || nb < kGeomEps) {
      *on_boundary = true;
      return 0;
    }
    double cr = cross(a, b);
    double dt = dot(a, b);
    if (std::abs(cr) < kGeomEps * na * nb && dt < 0) {
      *on_boundary = true;  // p on the open segment
      return 0;
    }
    total += std::atan2(cr, dt);
  }
  return (int)std::lround(total / (2.0 * M_PI));
}

// Strict point-in-polygon for simple polygons (boundary reported separately).
inline bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p, bool* on_boundary) {
  int w = winding_number(poly, p, on_boundary);
  return !*on_boundary && w != 0;
}

}  // namespace psc
