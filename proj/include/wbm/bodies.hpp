#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "wbm/hull.hpp"
#include "wbm/vec.hpp"

namespace wbm {

enum class BodyKind { polytope, zonotope, ball, segment, sum };

class Body;

struct SumTerm {
  double scale;
  std::shared_ptr<const Body> body;
};

/// Immutable description of a compact convex set in R^n.
///   polytope: convex hull of `points`
///   zonotope: center + sum of symmetric segments [-g, g] over `points` (the generators)
///   ball:     center + radius * unit ball
///   segment:  [a, b], stored as points {a, b}
///   sum:      sum of scale_i * body_i
class Body {
 public:
  static Body polytope(PointList vertices);
  static Body zonotope(Vec center, PointList generators);
  static Body ball(Vec center, double radius);
  static Body segment(Vec a, Vec b);
  static Body sum(std::vector<std::pair<double, Body>> terms);

  /// Convenience constructors.
  static Body unit_ball(int n) { return ball(Vec::Zero(n), 1.0); }
  static Body box(const Vec& lo, const Vec& hi);

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }

  const PointList& points() const { return points_; }  ///< polytope vertices / zonotope generators / {a, b}
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<SumTerm>& terms() const { return terms_; }

  /// True for polytopes, zonotopes, segments, and sums of those.
  bool polytopal() const;

 private:
  Body() = default;
  BodyKind kind_ = BodyKind::polytope;
  int dim_ = 0;
  PointList points_;
  Vec center_;
  double radius_ = 0.0;
  std::vector<SumTerm> terms_;
};

/// sup over the body of <y, u>. u need not be a unit vector.
double support(const Body& K, const Vec& u);

/// Extreme points of a polytopal body (polytope, zonotope, segment or sum of those).
PointList vertices_of(const Body& K);

/// Polytopes reduced to their extreme points; sums flattened with zero terms removed.
Body canonicalize(const Body& K);

/// K + L: an explicit polytope when both are polytopal, a symbolic sum otherwise.
/// In the plane the explicit sum uses an edge merge.
Body minkowski_sum(const Body& K, const Body& L);
/// K + L for polytopal inputs as the hull of pairwise vertex sums (reference path).
Body minkowski_sum_hull(const Body& K, const Body& L);
/// K + t L without forcing an explicit representation.
Body add_scaled(const Body& K, double t, const Body& L);
/// t K (t >= 0).
Body dilate(const Body& K, double t);
Body translate(const Body& K, const Vec& x);

/// Segments [0, v_i] whose Minkowski sum is the zonotope Z. Throws OriginNotContained.
std::vector<Body> zonotope_origin_decomposition(const Body& Z);

bool is_symmetric_about(const Body& K, const Vec& x, double tol = 1e-9);
bool contains_origin(const Body& K, double tol = 1e-10);
/// Nonempty interior in R^n.
bool full_dimensional(const Body& K);

/// Unit directions used for support-function comparisons: 360 uniform angles in the
/// plane, deterministic quasi-uniform points otherwise.
PointList direction_net(int n, int count = 360);

/// Max over the direction net of |h_K - h_L|.
double support_distance(const Body& K, const Body& L, int count = 360);

/// Planar body written as P + r*B with P a convex polygon given counter-clockwise.
/// P may be a single point or a segment (two vertices); in that case its two edges are
/// opposite.
struct PolyBall {
  std::vector<Vec2> P;
  double r = 0.0;

  int edge_count() const { return P.size() < 2 ? 0 : static_cast<int>(P.size()); }
  Vec2 edge_start(int i) const { return P[i]; }
  Vec2 edge_end(int i) const { return P[(i + 1) % P.size()]; }
  Vec2 edge_normal(int i) const { return outer_normal(edge_end(i) - edge_start(i)); }
  double support(const Vec2& u) const;
  double distance_to_polygon(const Vec2& x) const;
  bool contains(const Vec2& x, double tol = 0.0) const { return distance_to_polygon(x) <= r + tol; }
  double area_lebesgue() const;
  double perimeter() const;
  bool full_dimensional() const { return r > 0 || P.size() >= 3; }
};

/// Throws UnsupportedRepresentation when K is not planar.
PolyBall to_polyball(const Body& K);

/// 1-D body as an interval [lo, hi].
struct Interval {
  double lo, hi;
};
Interval to_interval(const Body& K);

/// Three-dimensional body as polytope + r*B (polytope may be lower-dimensional).
struct PolyBall3 {
  Polytope3 P;
  double r = 0.0;
};
PolyBall3 to_polyball3(const Body& K);

/// Axis-aligned bounding box via support functions.
std::pair<Vec, Vec> bounding_box(const Body& K);

/// True if K is an axis-aligned box (polytope or zonotope with axis generators).
bool is_axis_box(const Body& K, Vec* lo = nullptr, Vec* hi = nullptr);

Body body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const Body& K);
Body load_body(const std::string& path);
std::string describe(const Body& K);

}  // namespace wbm
