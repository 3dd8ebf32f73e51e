#pragma once
// Generators and oracles owned by the tests, independent of the library's own.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wbm/bodies.hpp"

namespace testsupport {

using wbm::Body;
using wbm::Vec;
using wbm::Vec2;

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Andrew's monotone chain, counter-clockwise, collinear points dropped.
inline std::vector<Vec2> monotone_hull(std::vector<Vec2> p) {
  std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  std::vector<Vec2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline double shoelace(const std::vector<Vec2>& P) {
  double s = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Vec2& a = P[i];
    const Vec2& b = P[(i + 1) % P.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return s / 2;
}

inline double perimeter(const std::vector<Vec2>& P) {
  double s = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) s += (P[(i + 1) % P.size()] - P[i]).norm();
  return s;
}

/// Vertices of a random convex polygon with 3..k points and area >= 0.05.
inline std::vector<Vec2> random_polygon_vertices(std::mt19937_64& rng, int k = 8, double box = 1.0) {
  std::uniform_real_distribution<double> U(-box, box);
  std::uniform_int_distribution<int> npts(3, k);
  for (;;) {
    std::vector<Vec2> pts;
    const int m = npts(rng);
    for (int i = 0; i < m; ++i) pts.emplace_back(U(rng), U(rng));
    auto h = monotone_hull(pts);
    if (h.size() >= 3 && shoelace(h) >= 0.05 * box * box) return h;
  }
}

inline Body as_polytope(const std::vector<Vec2>& P) {
  wbm::PointList pts;
  for (const auto& p : P) pts.push_back(Vec(p));
  return Body::polytope(pts);
}

inline Body random_polygon(std::mt19937_64& rng, int k = 8, double box = 1.0) {
  return as_polytope(random_polygon_vertices(rng, k, box));
}

inline Vec2 random_direction(std::mt19937_64& rng) {
  const double t = std::uniform_real_distribution<double>(0.0, 2 * M_PI)(rng);
  return {std::cos(t), std::sin(t)};
}

/// Support function of a vertex list.
inline double support_of(const std::vector<Vec2>& P, const Vec2& u) {
  double m = -INFINITY;
  for (const auto& p : P) m = std::max(m, p.dot(u));
  return m;
}

/// Gaussian measure of [lo, hi] in one dimension through erf.
inline double gauss_interval(double lo, double hi) {
  return 0.5 * (std::erf(hi / std::sqrt(2.0)) - std::erf(lo / std::sqrt(2.0)));
}

}  // namespace testsupport
