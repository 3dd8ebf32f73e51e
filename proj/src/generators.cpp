#include "wbm/generators.hpp"

#include <cmath>
#include <limits>

#include "wbm/errors.hpp"

namespace wbm {

namespace {

constexpr std::pair<GenKind, std::string_view> kNames[] = {
    {GenKind::polygon, "polygon"},
    {GenKind::symmetric_polygon, "symmetric_polygon"},
    {GenKind::origin_polygon, "origin_polygon"},
    {GenKind::zonotope, "zonotope"},
    {GenKind::origin_zonotope, "origin_zonotope"},
    {GenKind::centered_zonotope, "centered_zonotope"},
    {GenKind::ball, "ball"},
    {GenKind::segment, "segment"},
    {GenKind::interval, "interval"},
    {GenKind::symmetric_interval, "symmetric_interval"},
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec2 point(std::mt19937_64& rng, double h) { return Vec2(uniform(rng, -h, h), uniform(rng, -h, h)); }

Body polygon(std::mt19937_64& rng, bool symmetric) {
  for (;;) {
    const int k = std::uniform_int_distribution<int>(4, 10)(rng);
    std::vector<Vec2> pts;
    for (int i = 0; i < k; ++i) {
      const Vec2 p = point(rng, 1.0);
      pts.push_back(p);
      if (symmetric) pts.push_back(-p);
    }
    const auto hull = hull2d(pts);
    if (hull.size() < 3 || polygon_area(hull) < 0.05) continue;
    PointList v;
    for (const auto& p : hull) v.push_back(from2(p));
    return Body::polytope(std::move(v));
  }
}

Body zonotope(std::mt19937_64& rng, GenKind kind) {
  const int m = std::uniform_int_distribution<int>(2, 5)(rng);
  PointList gens;
  Vec2 center = Vec2::Zero();
  for (int i = 0; i < m; ++i) {
    const Vec2 g = point(rng, 0.5);
    gens.push_back(from2(g));
    // a point of [-g, g]; the negated sum is a center for which 0 is in the zonotope
    if (kind == GenKind::origin_zonotope) center -= uniform(rng, -1.0, 1.0) * g;
  }
  if (kind == GenKind::zonotope) center = point(rng, 0.5);
  return Body::zonotope(from2(center), std::move(gens));
}

// Distance from the origin to the boundary, negative when the origin is outside.
double inradius_at_origin(const Body& K) {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec& u : direction_net(2, 90)) m = std::min(m, support(K, u));
  return m;
}

}  // namespace

std::string_view to_string(GenKind k) {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) return name;
  }
  return "?";
}

GenKind gen_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kNames) {
    if (name == s) return kind;
  }
  throw ParseError("unknown body generator '" + std::string(s) + "'");
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix(splitmix(seed) ^ splitmix(index + 0x51ed2701ULL)));
}

Body random_body(std::mt19937_64& rng, const GenConfig& cfg) {
  if (!(cfg.scale_lo > 0) || !(cfg.scale_hi >= cfg.scale_lo)) throw InvalidBody("invalid generator scale range");
  const double scale =
      cfg.scale_hi > cfg.scale_lo ? std::exp(uniform(rng, std::log(cfg.scale_lo), std::log(cfg.scale_hi))) : cfg.scale_lo;
  Body K = Body::unit_ball(2);
  switch (cfg.kind) {
    case GenKind::polygon:
      K = polygon(rng, false);
      break;
    case GenKind::symmetric_polygon:
      K = polygon(rng, true);
      break;
    case GenKind::origin_polygon:
      do {
        K = polygon(rng, false);
      } while (inradius_at_origin(K) < 0.05);
      break;
    case GenKind::zonotope:
    case GenKind::origin_zonotope:
    case GenKind::centered_zonotope:
      K = zonotope(rng, cfg.kind);
      break;
    case GenKind::ball:
      K = Body::ball(from2(point(rng, 0.5)), uniform(rng, 0.1, 1.0));
      break;
    case GenKind::segment:
      K = Body::segment(from2(point(rng, 1.0)), from2(point(rng, 1.0)));
      break;
    case GenKind::interval: {
      double a = uniform(rng, -1.0, 1.0), b = uniform(rng, -1.0, 1.0);
      if (a > b) std::swap(a, b);
      K = Body::segment(make_vec({a}), make_vec({b + 1e-3}));
      break;
    }
    case GenKind::symmetric_interval: {
      const double a = uniform(rng, 0.01, 1.0);
      K = Body::segment(make_vec({-a}), make_vec({a}));
      break;
    }
  }
  return scale == 1.0 ? K : dilate(K, scale);
}

}  // namespace wbm
