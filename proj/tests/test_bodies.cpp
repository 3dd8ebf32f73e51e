#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/bodies.hpp"
#include "wbm/errors.hpp"
#include "wbm/generators.hpp"
#include "wbm/hull.hpp"

using namespace wbm;
using namespace testsupport;

TEST_CASE("two unit segments sum to the unit square") {
  const Body s = minkowski_sum(Body::segment(Vec2(0, 0), Vec2(1, 0)), Body::segment(Vec2(0, 0), Vec2(0, 1)));
  auto v = vertices_of(s);
  REQUIRE(v.size() == 4);
  std::vector<Vec2> p;
  for (const auto& x : v) p.emplace_back(x);
  CHECK(std::abs(shoelace(monotone_hull(p)) - 1.0) < 1e-14);
  for (const Vec2 corner : {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}) {
    const bool found = std::any_of(p.begin(), p.end(), [&](const Vec2& q) { return (q - corner).norm() < 1e-14; });
    CHECK(found);
  }
}

TEST_CASE("support function is additive under Minkowski sums") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto P = random_polygon_vertices(rng), Q = random_polygon_vertices(rng);
    const Body K = as_polytope(P), L = as_polytope(Q);
    const Body S = minkowski_sum(K, L);
    for (int d = 0; d < 8; ++d) {
      const Vec2 u = random_direction(rng);
      CHECK(std::abs(support(S, u) - support_of(P, u) - support_of(Q, u)) < 1e-12);
    }
  }
}

TEST_CASE("edge-merge sum agrees with the pairwise-hull reference") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Body K = random_polygon(rng), L = random_polygon(rng);
    CHECK(support_distance(minkowski_sum(K, L), minkowski_sum_hull(K, L)) < 1e-12);
  }
}

TEST_CASE("support is positively homogeneous and translation covariant") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(0.1, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto P = random_polygon_vertices(rng);
    const Body K = as_polytope(P);
    const double t = U(rng);
    const Vec2 x(U(rng), -U(rng));
    const Vec2 u = random_direction(rng);
    CHECK(std::abs(support(dilate(K, t), u) - t * support_of(P, u)) < 1e-12 * (1 + t));
    CHECK(std::abs(support(translate(K, x), u) - support_of(P, u) - x.dot(u)) < 1e-12 * (1 + x.norm()));
    CHECK(std::abs(support(K, 3.0 * Vec(u)) - 3.0 * support(K, u)) < 1e-12);
  }
}

TEST_CASE("ball and mixed sums stay symbolic but support is exact") {
  const Body K = Body::polytope({Vec2(0, 0), Vec2(2, 0), Vec2(0, 1)});
  const Body S = add_scaled(K, 0.5, Body::unit_ball(2));
  for (int i = 0; i < 16; ++i) {
    const double t = i * M_PI / 8;
    const Vec2 u(std::cos(t), std::sin(t));
    CHECK(std::abs(support(S, u) - support(K, u) - 0.5) < 1e-14);
  }
}

TEST_CASE("vertex dedup at 1e-10") {
  const Body K = Body::polytope({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(1 + 1e-12, 1), Vec2(0, 1), Vec2(0.5, 0.5)});
  CHECK(vertices_of(canonicalize(K)).size() == 4);
}

TEST_CASE("degenerate bodies are first class") {
  const Body seg = Body::segment(Vec2(-1, 0), Vec2(1, 0));
  CHECK_FALSE(full_dimensional(seg));
  CHECK(contains_origin(seg));
  CHECK(is_symmetric_about(seg, Vec2(0, 0)));
  const Body pt = Body::polytope({Vec2(0.3, 0.2)});
  CHECK_FALSE(full_dimensional(pt));
  CHECK(support(pt, Vec2(1, 0)) == doctest::Approx(0.3));
  CHECK(full_dimensional(Body::unit_ball(2)));
}

TEST_CASE("symmetry and origin tests") {
  const Body Z = Body::zonotope(Vec2(0.5, 0.1), {Vec2(1, 0), Vec2(0.3, 0.7)});
  CHECK(is_symmetric_about(Z, Vec2(0.5, 0.1)));
  CHECK_FALSE(is_symmetric_about(Z, Vec2(0, 0)));
  CHECK(contains_origin(Z));
  CHECK_FALSE(contains_origin(translate(Z, Vec2(5, 0))));
}

TEST_CASE("origin zonotopes decompose into segments [0, v]") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> U(-0.5, 0.5), L(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 4;
    PointList g;
    Vec2 c(0, 0);
    for (int i = 0; i < m; ++i) {
      const Vec2 gi(U(rng), U(rng));
      g.push_back(gi);
      c -= L(rng) * gi;
    }
    const Body Z = Body::zonotope(c, g);
    const auto parts = zonotope_origin_decomposition(Z);
    // every part is a segment starting at the origin
    for (const auto& p : parts) {
      const auto v = vertices_of(p);
      const bool has_origin = std::any_of(v.begin(), v.end(), [](const Vec& x) { return x.norm() < 1e-12; });
      CHECK(has_origin);
    }
    for (int d = 0; d < 360; ++d) {
      const Vec2 u(std::cos(d * M_PI / 180), std::sin(d * M_PI / 180));
      double h = 0;
      for (const auto& p : parts) h += std::max(0.0, support(p, u));
      CHECK(std::abs(h - support(Z, u)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(zonotope_origin_decomposition(Body::zonotope(Vec2(3, 0), {Vec2(1, 0)})), OriginNotContained);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(15);
  const Body K = random_polygon(rng);
  const Body L = body_from_json(body_to_json(K));
  CHECK(support_distance(K, L) == 0.0);
  const Body S = Body::sum({{1.0, Body::unit_ball(2)}, {2.0, Body::segment(Vec2(0, 0), Vec2(1, 1))}});
  CHECK(support_distance(S, body_from_json(body_to_json(S))) < 1e-15);
  CHECK_THROWS_AS(body_from_json(nlohmann::json::parse(R"({"type":"blob"})")), ParseError);
  CHECK_THROWS_AS(body_from_json(nlohmann::json::parse(R"({"type":"ball","center":[0,0]})")), ParseError);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Body::polytope({}), InvalidBody);
  CHECK_THROWS_AS(Body::ball(Vec2(0, 0), -1.0), InvalidBody);
  CHECK_THROWS_AS(minkowski_sum(Body::unit_ball(2), Body::unit_ball(3)), DimensionMismatch);
  CHECK_THROWS_AS(Body::polytope({Vec2(0, 0), Vec3(0, 0, 0)}), DimensionMismatch);
}

TEST_CASE("three-dimensional hull volume") {
  const Body cube = Body::box(Vec3(0, 0, 0), Vec3(1, 2, 3));
  const auto P = to_polyball3(cube);
  CHECK(P.r == 0.0);
  CHECK(vertices_of(cube).size() == 8);
  CHECK(support(cube, Vec3(1, 1, 1)) == doctest::Approx(6.0));
}

TEST_CASE("library generators produce the advertised classes") {
  for (int i = 0; i < 60; ++i) {
    auto rng = instance_rng(99, static_cast<std::uint64_t>(i));
    CHECK(is_symmetric_about(random_body(rng, {GenKind::symmetric_polygon}), Vec2(0, 0), 1e-9));
    CHECK(contains_origin(random_body(rng, {GenKind::origin_polygon})));
    CHECK(contains_origin(random_body(rng, {GenKind::origin_zonotope})));
    CHECK(is_symmetric_about(random_body(rng, {GenKind::centered_zonotope}), Vec2(0, 0), 1e-9));
  }
  auto a = instance_rng(5, 7), b = instance_rng(5, 7);
  CHECK(support_distance(random_body(a, {GenKind::polygon}), random_body(b, {GenKind::polygon})) == 0.0);
}
