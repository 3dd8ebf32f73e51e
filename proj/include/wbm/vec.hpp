#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

namespace wbm {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using PointList = std::vector<Vec>;

inline constexpr double kPi = std::numbers::pi;

/// Absolute tolerance for vertex deduplication; coordinates are assumed O(1).
inline constexpr double kDedupTol = 1e-10;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Outer normal of a counter-clockwise edge direction.
inline Vec2 outer_normal(const Vec2& dir) { return Vec2(dir.y(), -dir.x()).normalized(); }

inline Vec2 unit_at(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Angle in [0, 2pi).
inline double angle_of(const Vec2& u) {
  double a = std::atan2(u.y(), u.x());
  return a < 0 ? a + 2 * kPi : a;
}

inline Vec2 to2(const Vec& v) { return {v[0], v[1]}; }
inline Vec from2(const Vec2& v) {
  Vec r(2);
  r << v.x(), v.y();
  return r;
}
inline Vec3 to3(const Vec& v) { return {v[0], v[1], v[2]}; }
inline Vec from3(const Vec3& v) {
  Vec r(3);
  r << v.x(), v.y(), v.z();
  return r;
}

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace wbm
