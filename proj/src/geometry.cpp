#include "hsc/geometry.hpp"

#include <algorithm>

namespace hsc {

std::optional<Segment2> clip(const Segment2& s, const Box& box) {
  double t0 = 0.0, t1 = 1.0;
  const Vec2 d = s.b - s.a;
  auto edge = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    const double r = q / p;
    if (p < 0.0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
    return true;
  };
  if (!edge(-d.x, s.a.x - box.x0) || !edge(d.x, box.x1 - s.a.x) || !edge(-d.y, s.a.y - box.y0) ||
      !edge(d.y, box.y1 - s.a.y)) {
    return std::nullopt;
  }
  if (t0 > t1) return std::nullopt;
  return Segment2{s.a + t0 * d, s.a + t1 * d};
}

bool on_segment(Vec2 p, const Segment2& s, double tol) {
  const Vec2 d = s.b - s.a;
  const double len2 = d.x * d.x + d.y * d.y;
  double t = len2 > 0.0 ? ((p.x - s.a.x) * d.x + (p.y - s.a.y) * d.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 q = s.a + t * d;
  return std::hypot(p.x - q.x, p.y - q.y) <= tol;
}

double segment_distance(Vec3 p0, Vec3 p1, Vec3 q0, Vec3 q1) {
  const Vec3 u = p1 - p0, v = q1 - q0, w = p0 - q0;
  const double a = dot(u, u), b = dot(u, v), c = dot(v, v), d = dot(u, w), e = dot(v, w);
  const double den = a * c - b * b;
  double s = 0.0, t = 0.0;
  if (a <= 0.0 && c <= 0.0) return norm(w);
  if (a <= 0.0) {
    t = std::clamp(e / c, 0.0, 1.0);
  } else if (c <= 0.0) {
    s = std::clamp(-d / a, 0.0, 1.0);
  } else {
    s = den > 1e-14 * a * c ? std::clamp((b * e - c * d) / den, 0.0, 1.0) : 0.0;
    t = (b * s + e) / c;
    if (t < 0.0) {
      t = 0.0;
      s = std::clamp(-d / a, 0.0, 1.0);
    } else if (t > 1.0) {
      t = 1.0;
      s = std::clamp((b - d) / a, 0.0, 1.0);
    }
  }
  return norm(w + s * u - t * v);
}

}  // namespace hsc
