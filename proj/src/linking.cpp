#include "hsc/linking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hsc/error.hpp"
#include "hsc/horseshoe.hpp"

namespace hsc {

namespace {

constexpr std::size_t kChunk = 16;

struct Box3 {
  Vec3 lo, hi;
};

std::vector<Box3> chunk_boxes(const std::vector<Vec3>& c) {
  const std::size_t n = c.size();
  std::vector<Box3> out;
  for (std::size_t s = 0; s < n; s += kChunk) {
    Box3 b{c[s], c[s]};
    for (std::size_t i = s; i <= std::min(n, s + kChunk); ++i) {
      const Vec3& p = c[i % n];
      b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
      b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
    }
    out.push_back(b);
  }
  return out;
}

double box_gap(const Box3& a, const Box3& b) {
  const double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
  const double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
  const double dz = std::max({0.0, a.lo.z - b.hi.z, b.lo.z - a.hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void require_curve(const std::vector<Vec3>& c) {
  if (c.size() < 3) throw InvalidInput("closed curve needs at least 3 vertices");
}

Vec3 unit(Vec3 v) {
  const double n = norm(v);
  return n > 0.0 ? (1.0 / n) * v : Vec3{};
}

// Signed solid angle subtended by segment pair (p1,p2), (p3,p4), over 4 pi.
double segment_pair_gauss(Vec3 p1, Vec3 p2, Vec3 p3, Vec3 p4) {
  const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
  const Vec3 n1 = unit(cross(r13, r14)), n2 = unit(cross(r14, r24));
  const Vec3 n3 = unit(cross(r24, r23)), n4 = unit(cross(r23, r13));
  auto as = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
  const double omega = as(dot(n1, n2)) + as(dot(n2, n3)) + as(dot(n3, n4)) + as(dot(n4, n1));
  const double orient = dot(cross(p4 - p3, p2 - p1), r13);
  if (orient == 0.0) return 0.0;
  return (orient > 0.0 ? omega : -omega) / (4.0 * std::numbers::pi);
}

struct Degenerate {};

int crossings_along(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2, Vec3 d) {
  // Viewer at +infinity along d; e1 x e2 = d.
  const Vec3 helper = std::abs(d.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = unit(cross(helper, d));
  const Vec3 e2 = cross(d, e1);
  auto proj = [&](Vec3 p) { return Vec2{dot(p, e1), dot(p, e2)}; };
  const std::size_t n1 = c1.size(), n2 = c2.size();
  std::vector<Vec2> q1(n1), q2(n2);
  for (std::size_t i = 0; i < n1; ++i) q1[i] = proj(c1[i]);
  for (std::size_t j = 0; j < n2; ++j) q2[j] = proj(c2[j]);

  constexpr double kEdge = 1e-9;
  int total = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    const Vec2 a0 = q1[i], a1 = q1[(i + 1) % n1];
    const Vec2 da = a1 - a0;
    const double ax0 = std::min(a0.x, a1.x), ax1 = std::max(a0.x, a1.x);
    const double ay0 = std::min(a0.y, a1.y), ay1 = std::max(a0.y, a1.y);
    for (std::size_t j = 0; j < n2; ++j) {
      const Vec2 b0 = q2[j], b1 = q2[(j + 1) % n2];
      if (std::max(b0.x, b1.x) < ax0 - kEdge || std::min(b0.x, b1.x) > ax1 + kEdge) continue;
      if (std::max(b0.y, b1.y) < ay0 - kEdge || std::min(b0.y, b1.y) > ay1 + kEdge) continue;
      const Vec2 db = b1 - b0;
      const double den = cross(da, db);
      const double scale = std::sqrt((da.x * da.x + da.y * da.y) * (db.x * db.x + db.y * db.y));
      const Vec2 w = b0 - a0;
      if (std::abs(den) <= 1e-12 * scale) {
        if (std::abs(cross(da, w)) <= 1e-12 * std::max(scale, 1e-300)) throw Degenerate{};
        continue;
      }
      const double t = cross(w, db) / den;
      const double u = cross(w, da) / den;
      if (t < -kEdge || t > 1 + kEdge || u < -kEdge || u > 1 + kEdge) continue;
      if (t < kEdge || t > 1 - kEdge || u < kEdge || u > 1 - kEdge) throw Degenerate{};
      const double h1 = dot(c1[i] + t * (c1[(i + 1) % n1] - c1[i]), d);
      const double h2 = dot(c2[j] + u * (c2[(j + 1) % n2] - c2[j]), d);
      if (std::abs(h1 - h2) < 1e-12) throw Degenerate{};
      if (h1 > h2) total += den > 0.0 ? 1 : -1;
    }
  }
  return total;
}

}  // namespace

double gauss_linking_integral(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2) {
  require_curve(c1);
  require_curve(c2);
  const std::size_t n1 = c1.size(), n2 = c2.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n2; ++j) row += segment_pair_gauss(c1[i], c1[(i + 1) % n1], c2[j], c2[(j + 1) % n2]);
    sum += row;
  }
  return sum;
}

int linking_by_gauss(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2) {
  return static_cast<int>(std::lround(gauss_linking_integral(c1, c2)));
}

int linking_by_crossings(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2, std::uint64_t seed) {
  require_curve(c1);
  require_curve(c2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec3 d{g(rng), g(rng), g(rng)};
    if (norm(d) < 1e-6) continue;
    try {
      return crossings_along(c1, c2, unit(d));
    } catch (const Degenerate&) {
    }
  }
  throw NumericalFailure("no generic projection direction found");
}

double min_distance(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2) {
  require_curve(c1);
  require_curve(c2);
  const auto b1 = chunk_boxes(c1), b2 = chunk_boxes(c2);
  struct Pair {
    double gap;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < b1.size(); ++i)
    for (std::size_t j = 0; j < b2.size(); ++j) pairs.push_back({box_gap(b1[i], b2[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.gap < b.gap; });
  const std::size_t n1 = c1.size(), n2 = c2.size();
  double best = std::numeric_limits<double>::infinity();
  for (const Pair& p : pairs) {
    if (p.gap >= best) break;
    for (std::size_t i = p.i * kChunk; i < std::min(n1, (p.i + 1) * kChunk); ++i)
      for (std::size_t j = p.j * kChunk; j < std::min(n2, (p.j + 1) * kChunk); ++j)
        best = std::min(best, segment_distance(c1[i], c1[(i + 1) % n1], c2[j], c2[(j + 1) % n2]));
  }
  return best;
}

int linking_number(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2) {
  if (min_distance(c1, c2) <= 1e-9) throw NumericalFailure("curves intersect or nearly touch");
  const double g = gauss_linking_integral(c1, c2);
  const long rounded = std::lround(g);
  if (std::abs(g - static_cast<double>(rounded)) > 0.05) {
    throw NumericalFailure("Gauss integral not near an integer: " + std::to_string(g));
  }
  const int k = linking_by_crossings(c1, c2);
  if (k != rounded) {
    throw NumericalFailure("linking methods disagree: crossings " + std::to_string(k) + ", integral " +
                           std::to_string(g));
  }
  return k;
}

int linking_number(const Orbit3D& c1, const Orbit3D& c2) { return linking_number(c1.vertices, c2.vertices); }

}  // namespace hsc
