#pragma once

#include <vector>

#include "wbm/vec.hpp"

namespace wbm {

/// Convex hull of planar points: extreme points in counter-clockwise order, starting from
/// the lowest (then leftmost) point. Collinear and duplicate points are dropped.
/// A single point yields one vertex; collinear input yields the two endpoints.
std::vector<Vec2> hull2d(std::vector<Vec2> pts, double tol = kDedupTol);

/// Signed area of a counter-clockwise polygon (0 for fewer than three vertices).
double polygon_area(const std::vector<Vec2>& poly);
double polygon_perimeter(const std::vector<Vec2>& poly);

/// Minkowski sum of two convex polygons by merging edge sequences (both inputs in hull2d form).
std::vector<Vec2> minkowski_merge2d(const std::vector<Vec2>& P, const std::vector<Vec2>& Q);

/// A facet of a 3-D polytope: outward unit normal, offset h = <normal, x> on the facet,
/// and its vertex loop (indices into Polytope3::vertices), counter-clockwise seen from outside.
struct Facet3 {
  Vec3 normal;
  double offset = 0.0;
  std::vector<int> loop;
  double area = 0.0;
};

/// Boundary description of a full-dimensional 3-D convex polytope.
struct Polytope3 {
  std::vector<Vec3> vertices;
  std::vector<Facet3> facets;
  int dimension = 3;  ///< affine dimension of the input; facets are empty when < 3
  double volume() const;
  bool contains(const Vec3& x, double tol = 1e-12) const;
  /// Euclidean distance from x to the polytope (0 inside).
  double distance(const Vec3& x) const;
};

Polytope3 hull3d(const std::vector<Vec3>& pts, double tol = kDedupTol);

/// Extreme points of an arbitrary-dimension point set (LP-based; used for n >= 4).
PointList extreme_points(const PointList& pts, double tol = kDedupTol);

/// Affine dimension of a point set.
int affine_dimension(const PointList& pts, double tol = kDedupTol);

}  // namespace wbm
