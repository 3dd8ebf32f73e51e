#include "wbm/bodies.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wbm/errors.hpp"
#include "wbm/lp.hpp"

namespace wbm {

namespace {

void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw InvalidBody(std::string(what) + " has non-finite coordinates");
}

void require_dim(const Vec& v, int n) {
  if (v.size() != n) throw DimensionMismatch("expected a point in R^" + std::to_string(n));
}

}  // namespace

Body Body::polytope(PointList vertices) {
  if (vertices.empty()) throw InvalidBody("polytope needs at least one vertex");
  Body b;
  b.kind_ = BodyKind::polytope;
  b.dim_ = static_cast<int>(vertices[0].size());
  if (b.dim_ < 1) throw InvalidBody("dimension must be >= 1");
  for (const auto& v : vertices) {
    require_dim(v, b.dim_);
    require_finite(v, "vertex");
  }
  b.points_ = std::move(vertices);
  return b;
}

Body Body::zonotope(Vec center, PointList generators) {
  Body b;
  b.kind_ = BodyKind::zonotope;
  b.dim_ = static_cast<int>(center.size());
  if (b.dim_ < 1) throw InvalidBody("dimension must be >= 1");
  require_finite(center, "center");
  for (const auto& g : generators) {
    require_dim(g, b.dim_);
    require_finite(g, "generator");
    if (g.norm() == 0.0) throw InvalidBody("zonotope generators must be nonzero");
  }
  b.center_ = std::move(center);
  b.points_ = std::move(generators);
  return b;
}

Body Body::ball(Vec center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidBody("ball radius must be a finite nonnegative number");
  Body b;
  b.kind_ = BodyKind::ball;
  b.dim_ = static_cast<int>(center.size());
  if (b.dim_ < 1) throw InvalidBody("dimension must be >= 1");
  require_finite(center, "center");
  b.center_ = std::move(center);
  b.radius_ = radius;
  return b;
}

Body Body::segment(Vec a, Vec b_) {
  Body b;
  b.kind_ = BodyKind::segment;
  b.dim_ = static_cast<int>(a.size());
  if (b.dim_ < 1) throw InvalidBody("dimension must be >= 1");
  require_dim(b_, b.dim_);
  require_finite(a, "segment endpoint");
  require_finite(b_, "segment endpoint");
  b.points_ = {std::move(a), std::move(b_)};
  return b;
}

Body Body::sum(std::vector<std::pair<double, Body>> terms) {
  if (terms.empty()) throw InvalidBody("sum needs at least one term");
  Body b;
  b.kind_ = BodyKind::sum;
  b.dim_ = terms[0].second.dim();
  for (auto& [s, body] : terms) {
    if (body.dim() != b.dim_) throw DimensionMismatch("sum terms must share the ambient dimension");
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidBody("sum scales must be finite and nonnegative");
    b.terms_.push_back({s, std::make_shared<const Body>(std::move(body))});
  }
  return b;
}

Body Body::box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) throw DimensionMismatch("box corners differ in dimension");
  PointList gens;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) throw InvalidBody("box with hi < lo");
    if (hi[i] > lo[i]) {
      Vec g = Vec::Zero(lo.size());
      g[i] = 0.5 * (hi[i] - lo[i]);
      gens.push_back(g);
    }
  }
  return zonotope(0.5 * (lo + hi), gens);
}

bool Body::polytopal() const {
  switch (kind_) {
    case BodyKind::polytope:
    case BodyKind::zonotope:
    case BodyKind::segment:
      return true;
    case BodyKind::ball:
      return radius_ == 0.0;
    case BodyKind::sum:
      return std::all_of(terms_.begin(), terms_.end(),
                         [](const SumTerm& t) { return t.scale == 0.0 || t.body->polytopal(); });
  }
  return false;
}

double support(const Body& K, const Vec& u) {
  if (u.size() != K.dim()) throw DimensionMismatch("direction dimension differs from body dimension");
  switch (K.kind()) {
    case BodyKind::polytope: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& v : K.points()) best = std::max(best, v.dot(u));
      return best;
    }
    case BodyKind::zonotope: {
      double h = K.center().dot(u);
      for (const auto& g : K.points()) h += std::abs(g.dot(u));
      return h;
    }
    case BodyKind::ball:
      return K.center().dot(u) + K.radius() * u.norm();
    case BodyKind::segment:
      return std::max(K.points()[0].dot(u), K.points()[1].dot(u));
    case BodyKind::sum: {
      double h = 0.0;
      for (const auto& t : K.terms()) {
        if (t.scale != 0.0) h += t.scale * support(*t.body, u);
      }
      return h;
    }
  }
  return 0.0;
}

namespace {

PointList canonical_points(const PointList& pts, int n) {
  if (n == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (hi - lo <= kDedupTol) return {make_vec({lo})};
    return {make_vec({lo}), make_vec({hi})};
  }
  if (n == 2) {
    std::vector<Vec2> p2;
    for (const auto& p : pts) p2.push_back(to2(p));
    PointList out;
    for (const auto& q : hull2d(p2)) out.push_back(from2(q));
    return out;
  }
  if (n == 3) {
    std::vector<Vec3> p3;
    for (const auto& p : pts) p3.push_back(to3(p));
    Polytope3 P = hull3d(p3);
    if (P.dimension == 3) {
      PointList out;
      for (const auto& v : P.vertices) out.push_back(from3(v));
      return out;
    }
  }
  return extreme_points(pts);
}

PointList pairwise_sums(const PointList& A, const PointList& B) {
  PointList out;
  out.reserve(A.size() * B.size());
  for (const auto& a : A) {
    for (const auto& b : B) out.push_back(a + b);
  }
  return out;
}

std::vector<Vec2> as2(const PointList& pts) {
  std::vector<Vec2> out;
  for (const auto& p : pts) out.push_back(to2(p));
  return out;
}

PointList from2list(const std::vector<Vec2>& pts) {
  PointList out;
  for (const auto& p : pts) out.push_back(from2(p));
  return out;
}

}  // namespace

PointList vertices_of(const Body& K) {
  const int n = K.dim();
  switch (K.kind()) {
    case BodyKind::polytope:
      return canonical_points(K.points(), n);
    case BodyKind::segment:
      return canonical_points(K.points(), n);
    case BodyKind::ball:
      if (K.radius() == 0.0) return {K.center()};
      throw UnsupportedRepresentation("a ball of positive radius has no vertices");
    case BodyKind::zonotope: {
      if (n == 2) {
        std::vector<Vec2> acc{to2(K.center())};
        for (const auto& g : K.points()) acc = minkowski_merge2d(acc, {Vec2(-to2(g)), to2(g)});
        return from2list(hull2d(acc));
      }
      PointList acc{K.center()};
      for (const auto& g : K.points()) acc = canonical_points(pairwise_sums(acc, {-g, g}), n);
      return acc;
    }
    case BodyKind::sum: {
      PointList acc{Vec::Zero(n)};
      for (const auto& t : K.terms()) {
        if (t.scale == 0.0) continue;
        PointList v = vertices_of(*t.body);
        for (auto& p : v) p *= t.scale;
        if (n == 2) {
          acc = from2list(minkowski_merge2d(hull2d(as2(acc)), hull2d(as2(v))));
        } else {
          acc = canonical_points(pairwise_sums(acc, v), n);
        }
      }
      return canonical_points(acc, n);
    }
  }
  return {};
}

Body canonicalize(const Body& K) {
  switch (K.kind()) {
    case BodyKind::polytope:
      return Body::polytope(canonical_points(K.points(), K.dim()));
    case BodyKind::sum: {
      std::vector<std::pair<double, Body>> flat;
      for (const auto& t : K.terms()) {
        if (t.scale == 0.0) continue;
        Body c = canonicalize(*t.body);
        if (c.kind() == BodyKind::sum) {
          for (const auto& s : c.terms()) flat.emplace_back(t.scale * s.scale, *s.body);
        } else {
          flat.emplace_back(t.scale, std::move(c));
        }
      }
      if (flat.empty()) return Body::polytope({Vec::Zero(K.dim())});
      if (flat.size() == 1 && flat[0].first == 1.0) return flat[0].second;
      return Body::sum(std::move(flat));
    }
    default:
      return K;
  }
}

Body minkowski_sum(const Body& K, const Body& L) {
  if (K.dim() != L.dim()) throw DimensionMismatch("Minkowski sum of bodies in different dimensions");
  if (K.polytopal() && L.polytopal()) {
    if (K.dim() == 2) {
      return Body::polytope(from2list(minkowski_merge2d(as2(vertices_of(K)), as2(vertices_of(L)))));
    }
    return minkowski_sum_hull(K, L);
  }
  return Body::sum({{1.0, K}, {1.0, L}});
}

Body minkowski_sum_hull(const Body& K, const Body& L) {
  if (K.dim() != L.dim()) throw DimensionMismatch("Minkowski sum of bodies in different dimensions");
  return Body::polytope(canonical_points(pairwise_sums(vertices_of(K), vertices_of(L)), K.dim()));
}

Body add_scaled(const Body& K, double t, const Body& L) {
  if (K.dim() != L.dim()) throw DimensionMismatch("Minkowski sum of bodies in different dimensions");
  if (t == 0.0) return K;
  return Body::sum({{1.0, K}, {t, L}});
}

Body dilate(const Body& K, double t) {
  if (!(t >= 0.0)) throw InvalidBody("dilation factor must be nonnegative");
  switch (K.kind()) {
    case BodyKind::polytope: {
      PointList v = K.points();
      for (auto& p : v) p *= t;
      return Body::polytope(std::move(v));
    }
    case BodyKind::segment:
      return Body::segment(t * K.points()[0], t * K.points()[1]);
    case BodyKind::ball:
      return Body::ball(t * K.center(), t * K.radius());
    case BodyKind::zonotope: {
      if (t == 0.0) return Body::zonotope(Vec::Zero(K.dim()), {});
      PointList g = K.points();
      for (auto& p : g) p *= t;
      return Body::zonotope(t * K.center(), std::move(g));
    }
    case BodyKind::sum: {
      std::vector<std::pair<double, Body>> terms;
      for (const auto& s : K.terms()) terms.emplace_back(t * s.scale, *s.body);
      return Body::sum(std::move(terms));
    }
  }
  return K;
}

Body translate(const Body& K, const Vec& x) {
  if (x.size() != K.dim()) throw DimensionMismatch("translation vector dimension");
  switch (K.kind()) {
    case BodyKind::polytope: {
      PointList v = K.points();
      for (auto& p : v) p += x;
      return Body::polytope(std::move(v));
    }
    case BodyKind::segment:
      return Body::segment(K.points()[0] + x, K.points()[1] + x);
    case BodyKind::ball:
      return Body::ball(K.center() + x, K.radius());
    case BodyKind::zonotope:
      return Body::zonotope(K.center() + x, K.points());
    case BodyKind::sum:
      return Body::sum({{1.0, K}, {1.0, Body::polytope({x})}});
  }
  return K;
}

std::vector<Body> zonotope_origin_decomposition(const Body& Z) {
  if (Z.kind() != BodyKind::zonotope) throw InvalidBody("zonotope_origin_decomposition expects a zonotope");
  const int n = Z.dim();
  const auto& gens = Z.points();
  const int m = static_cast<int>(gens.size());
  if (m == 0) {
    if (Z.center().norm() <= kDedupTol) return {};
    throw OriginNotContained("zonotope is a single point away from the origin");
  }
  // lambda_i = mu_i - 1 in [-1, 1]; mu_i + s_i = 2; sum mu_i g_i = sum g_i - center
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, 2 * m);
  Eigen::VectorXd b(n + m);
  Vec rhs = -Z.center();
  for (int i = 0; i < m; ++i) {
    A.block(0, i, n, 1) = gens[i];
    rhs += gens[i];
    A(n + i, i) = 1.0;
    A(n + i, m + i) = 1.0;
    b[n + i] = 2.0;
  }
  b.head(n) = rhs;
  auto sol = lp_feasible(A, b);
  if (!sol) throw OriginNotContained("the origin is not in the zonotope");
  std::vector<Body> out;
  const Vec zero = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    const double lambda = std::clamp((*sol)[i] - 1.0, -1.0, 1.0);
    const Vec neg = -(1.0 + lambda) * gens[i];
    const Vec pos = (1.0 - lambda) * gens[i];
    if (neg.norm() > kDedupTol) out.push_back(Body::segment(zero, neg));
    if (pos.norm() > kDedupTol) out.push_back(Body::segment(zero, pos));
  }
  return out;
}

PointList direction_net(int n, int count) {
  PointList out;
  if (n == 1) return {make_vec({1.0}), make_vec({-1.0})};
  if (n == 2) {
    for (int i = 0; i < count; ++i) out.push_back(from2(unit_at(2 * kPi * i / count)));
    return out;
  }
  // coordinate directions plus a Halton-based quasi-uniform cloud mapped to the sphere
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    out.push_back(e);
    out.push_back(-e);
  }
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  for (int k = 1; k <= count; ++k) {
    Vec v(n);
    for (int d = 0; d < n; ++d) {
      const int base = primes[d % 16];
      double f = 1.0, x = 0.0;
      for (int i = k; i > 0; i /= base) {
        f /= base;
        x += f * (i % base);
      }
      v[d] = 2.0 * x - 1.0;
    }
    if (v.norm() > 1e-6) out.push_back(v.normalized());
  }
  return out;
}

double support_distance(const Body& K, const Body& L, int count) {
  double worst = 0.0;
  for (const auto& u : direction_net(K.dim(), count)) worst = std::max(worst, std::abs(support(K, u) - support(L, u)));
  return worst;
}

bool is_symmetric_about(const Body& K, const Vec& x, double tol) {
  if (x.size() != K.dim()) throw DimensionMismatch("center dimension");
  switch (K.kind()) {
    case BodyKind::ball:
    case BodyKind::zonotope:
      return (K.center() - x).cwiseAbs().maxCoeff() <= tol;
    case BodyKind::segment:
      return (0.5 * (K.points()[0] + K.points()[1]) - x).cwiseAbs().maxCoeff() <= tol;
    case BodyKind::polytope: {
      const PointList v = vertices_of(K);
      for (const auto& p : v) {
        const Vec q = 2 * x - p;
        bool found = std::any_of(v.begin(), v.end(), [&](const Vec& w) { return (w - q).cwiseAbs().maxCoeff() <= tol; });
        if (!found) return false;
      }
      return true;
    }
    case BodyKind::sum:
      for (const auto& u : direction_net(K.dim(), 360)) {
        if (std::abs((support(K, u) - x.dot(u)) - (support(K, -u) + x.dot(u))) > tol) return false;
      }
      return true;
  }
  return false;
}

bool contains_origin(const Body& K, double tol) {
  const int n = K.dim();
  switch (K.kind()) {
    case BodyKind::ball:
      return K.center().norm() <= K.radius() + tol;
    case BodyKind::segment: {
      const Vec& a = K.points()[0];
      const Vec d = K.points()[1] - a;
      const double L2 = d.squaredNorm();
      const double t = L2 > 0 ? std::clamp(-a.dot(d) / L2, 0.0, 1.0) : 0.0;
      return (a + t * d).norm() <= tol;
    }
    case BodyKind::zonotope:
      try {
        zonotope_origin_decomposition(K);
        return true;
      } catch (const OriginNotContained&) {
        return false;
      }
    case BodyKind::polytope:
      if (n == 2) return to_polyball(K).distance_to_polygon(Vec2::Zero()) <= tol;
      {
        Eigen::MatrixXd pts(n, static_cast<Eigen::Index>(K.points().size()));
        for (std::size_t i = 0; i < K.points().size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = K.points()[i];
        return in_convex_hull(pts, Vec::Zero(n), tol);
      }
    case BodyKind::sum:
      if (n <= 2) {
        if (n == 1) {
          auto I = to_interval(K);
          return I.lo <= tol && I.hi >= -tol;
        }
        return to_polyball(K).contains(Vec2::Zero(), tol);
      }
      for (const auto& u : direction_net(n, 2000)) {
        if (support(K, u) < -tol) return false;
      }
      return true;
  }
  return false;
}

namespace {

void collect_span(const Body& K, PointList& dirs, bool& has_ball) {
  switch (K.kind()) {
    case BodyKind::polytope:
      for (const auto& p : K.points()) dirs.push_back(p - K.points()[0]);
      break;
    case BodyKind::zonotope:
      for (const auto& g : K.points()) dirs.push_back(g);
      break;
    case BodyKind::segment:
      dirs.push_back(K.points()[1] - K.points()[0]);
      break;
    case BodyKind::ball:
      if (K.radius() > 0) has_ball = true;
      break;
    case BodyKind::sum:
      for (const auto& t : K.terms()) {
        if (t.scale > 0) collect_span(*t.body, dirs, has_ball);
      }
      break;
  }
}

}  // namespace

bool full_dimensional(const Body& K) {
  PointList dirs;
  bool has_ball = false;
  collect_span(K, dirs, has_ball);
  if (has_ball) return true;
  if (dirs.empty()) return false;
  Eigen::MatrixXd M(K.dim(), static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) M.col(static_cast<Eigen::Index>(i)) = dirs[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(kDedupTol);
  return lu.rank() == K.dim();
}

// ---------------------------------------------------------------- PolyBall

double PolyBall::support(const Vec2& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : P) best = std::max(best, p.dot(u));
  return best + r * u.norm();
}

double PolyBall::distance_to_polygon(const Vec2& x) const {
  if (P.size() == 1) return (x - P[0]).norm();
  bool inside = P.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < edge_count(); ++i) {
    const Vec2 a = edge_start(i), b = edge_end(i);
    const Vec2 d = b - a;
    if (cross2(d, x - a) < 0) inside = false;
    const double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    best = std::min(best, (x - (a + t * d)).norm());
  }
  return inside ? 0.0 : best;
}

double PolyBall::area_lebesgue() const { return polygon_area(P) + perimeter() * r + kPi * r * r; }

double PolyBall::perimeter() const { return polygon_perimeter(P); }

namespace {

void accumulate_polyball(const Body& K, double scale, std::vector<Vec2>& poly, double& r) {
  if (scale == 0.0) return;
  switch (K.kind()) {
    case BodyKind::ball:
      poly = minkowski_merge2d(poly, {Vec2(scale * to2(K.center()))});
      r += scale * K.radius();
      return;
    case BodyKind::sum:
      for (const auto& t : K.terms()) accumulate_polyball(*t.body, scale * t.scale, poly, r);
      return;
    default: {
      std::vector<Vec2> v = as2(vertices_of(K));
      for (auto& p : v) p *= scale;
      poly = minkowski_merge2d(poly, hull2d(v));
    }
  }
}

}  // namespace

PolyBall to_polyball(const Body& K) {
  if (K.dim() != 2) throw UnsupportedRepresentation("planar representation requested for a body in R^" + std::to_string(K.dim()));
  PolyBall pb;
  pb.P = {Vec2::Zero()};
  accumulate_polyball(K, 1.0, pb.P, pb.r);
  pb.P = hull2d(pb.P);
  return pb;
}

Interval to_interval(const Body& K) {
  if (K.dim() != 1) throw DimensionMismatch("interval representation requires n = 1");
  return {-support(K, make_vec({-1.0})), support(K, make_vec({1.0}))};
}

namespace {

void accumulate_polyball3(const Body& K, double scale, PointList& pts, double& r) {
  if (scale == 0.0) return;
  switch (K.kind()) {
    case BodyKind::ball:
      for (auto& p : pts) p += scale * K.center();
      r += scale * K.radius();
      return;
    case BodyKind::sum:
      for (const auto& t : K.terms()) accumulate_polyball3(*t.body, scale * t.scale, pts, r);
      return;
    default: {
      PointList v = vertices_of(K);
      for (auto& p : v) p *= scale;
      pts = canonical_points(pairwise_sums(pts, v), 3);
    }
  }
}

}  // namespace

PolyBall3 to_polyball3(const Body& K) {
  if (K.dim() != 3) throw UnsupportedRepresentation("3-D representation requested for a body in R^" + std::to_string(K.dim()));
  PointList pts{Vec::Zero(3)};
  PolyBall3 out;
  accumulate_polyball3(K, 1.0, pts, out.r);
  std::vector<Vec3> p3;
  for (const auto& p : pts) p3.push_back(to3(p));
  out.P = hull3d(p3);
  return out;
}

std::pair<Vec, Vec> bounding_box(const Body& K) {
  const int n = K.dim();
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    hi[i] = support(K, e);
    lo[i] = -support(K, -e);
  }
  return {lo, hi};
}

bool is_axis_box(const Body& K, Vec* lo, Vec* hi) {
  auto axis_aligned = [](const Vec& g) {
    int nz = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (g[i] != 0.0) ++nz;
    }
    return nz <= 1;
  };
  bool ok = false;
  if (K.kind() == BodyKind::zonotope) {
    ok = std::all_of(K.points().begin(), K.points().end(), axis_aligned);
  } else if (K.kind() == BodyKind::segment) {
    ok = axis_aligned(K.points()[1] - K.points()[0]);
  } else if (K.kind() == BodyKind::polytope) {
    auto [l, h] = bounding_box(K);
    const PointList v = vertices_of(K);
    // a box has exactly the 2^k corners of its bounding box (k = nondegenerate axes)
    int k = 0;
    for (Eigen::Index i = 0; i < l.size(); ++i) {
      if (h[i] - l[i] > kDedupTol) ++k;
    }
    if (k < 31 && v.size() == (std::size_t{1} << k)) {
      ok = std::all_of(v.begin(), v.end(), [&](const Vec& p) {
        for (Eigen::Index i = 0; i < p.size(); ++i) {
          if (std::abs(p[i] - l[i]) > kDedupTol && std::abs(p[i] - h[i]) > kDedupTol) return false;
        }
        return true;
      });
    }
  } else if (K.kind() == BodyKind::ball) {
    ok = K.radius() == 0.0;
  }
  if (ok) {
    auto [l, h] = bounding_box(K);
    if (lo) *lo = l;
    if (hi) *hi = h;
  }
  return ok;
}

// ---------------------------------------------------------------- JSON

namespace {

Vec vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty numeric array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("expected a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

PointList points_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of points");
  PointList out;
  for (const auto& p : j) out.push_back(vec_from_json(p));
  return out;
}

}  // namespace

Body body_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("body must be an object with a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "polytope") return Body::polytope(points_from_json(j.at("vertices")));
    if (type == "zonotope") return Body::zonotope(vec_from_json(j.at("center")), points_from_json(j.at("generators")));
    if (type == "ball") return Body::ball(vec_from_json(j.at("center")), j.at("radius").get<double>());
    if (type == "segment") return Body::segment(vec_from_json(j.at("a")), vec_from_json(j.at("b")));
    if (type == "sum") {
      std::vector<std::pair<double, Body>> terms;
      for (const auto& t : j.at("terms")) terms.emplace_back(t.at("scale").get<double>(), body_from_json(t.at("body")));
      return Body::sum(std::move(terms));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ") + type + " body: " + e.what());
  }
  throw ParseError("unknown body type \"" + type + "\"");
}

nlohmann::json body_to_json(const Body& K) {
  nlohmann::json j;
  switch (K.kind()) {
    case BodyKind::polytope:
      j["type"] = "polytope";
      j["vertices"] = nlohmann::json::array();
      for (const auto& v : K.points()) j["vertices"].push_back(vec_to_json(v));
      break;
    case BodyKind::zonotope:
      j["type"] = "zonotope";
      j["center"] = vec_to_json(K.center());
      j["generators"] = nlohmann::json::array();
      for (const auto& g : K.points()) j["generators"].push_back(vec_to_json(g));
      break;
    case BodyKind::ball:
      j["type"] = "ball";
      j["center"] = vec_to_json(K.center());
      j["radius"] = K.radius();
      break;
    case BodyKind::segment:
      j["type"] = "segment";
      j["a"] = vec_to_json(K.points()[0]);
      j["b"] = vec_to_json(K.points()[1]);
      break;
    case BodyKind::sum:
      j["type"] = "sum";
      j["terms"] = nlohmann::json::array();
      for (const auto& t : K.terms()) j["terms"].push_back({{"scale", t.scale}, {"body", body_to_json(*t.body)}});
      break;
  }
  return j;
}

Body load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open body file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return body_from_json(j);
}

std::string describe(const Body& K) {
  std::ostringstream os;
  switch (K.kind()) {
    case BodyKind::polytope:
      os << "polytope[" << K.points().size() << "]";
      break;
    case BodyKind::zonotope:
      os << "zonotope[" << K.points().size() << "]";
      break;
    case BodyKind::ball:
      os << "ball(r=" << K.radius() << ")";
      break;
    case BodyKind::segment:
      os << "segment";
      break;
    case BodyKind::sum:
      os << "sum(";
      for (std::size_t i = 0; i < K.terms().size(); ++i) {
        if (i) os << "+";
        os << K.terms()[i].scale << "*" << describe(*K.terms()[i].body);
      }
      os << ")";
      break;
  }
  return os.str();
}

}  // namespace wbm
