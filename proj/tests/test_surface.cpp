#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/measures.hpp"
#include "wbm/surface.hpp"

using namespace wbm;
using namespace testsupport;

TEST_CASE("surface measure of a polygon: edge lengths at outer normals, closed") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto P = random_polygon_vertices(rng);
    const SphericalMeasure S = surface_measure(as_polytope(P));
    const auto atoms = S.atoms();
    CHECK(atoms.size() == P.size());
    double total = 0;
    for (const auto& a : atoms) {
      CHECK(a.w > 0);
      total += a.w;
    }
    CHECK(std::abs(total - perimeter(P)) < 1e-12);
    CHECK(S.atom_moment().norm() < 1e-12);
  }
}

TEST_CASE("integral of h_L against S_K is the mixed area by polarization") {
  std::mt19937_64 rng(32);
  const MeasureSpec leb = MeasureSpec::lebesgue(2);
  for (int i = 0; i < 50; ++i) {
    const auto P = random_polygon_vertices(rng), Q = random_polygon_vertices(rng);
    const Body K = as_polytope(P), L = as_polytope(Q);
    const double polar = measure(leb, minkowski_sum(K, L)).value - shoelace(P) - shoelace(Q);
    CHECK(std::abs(integrate_support(surface_measure(K), L).value - polar) < 1e-12);
  }
}

TEST_CASE("weighted surface area oracles") {
  const MeasureSpec leb = MeasureSpec::lebesgue(2), x2 = MeasureSpec::radial_power(2, 2), g = MeasureSpec::gaussian(2);
  std::mt19937_64 rng(33);
  const auto P = random_polygon_vertices(rng);
  CHECK(std::abs(weighted_surface_area(leb, as_polytope(P)).value - perimeter(P)) < 1e-12);

  const Body sq = Body::box(Vec2(-1, -1), Vec2(1, 1));
  CHECK(std::abs(weighted_surface_area(x2, sq).value - 32.0 / 3) < 1e-12);

  // circle of radius r about the origin: 2 pi r phi(r)
  for (double r : {0.2, 1.0, 2.5}) {
    const auto a = weighted_surface_area(g, Body::ball(Vec2(0, 0), r));
    CHECK(std::abs(a.value - r * std::exp(-r * r / 2)) <= 3 * a.abs_error + 1e-12);
    const auto b = weighted_surface_area(x2, Body::ball(Vec2(0, 0), r));
    CHECK(std::abs(b.value - 2 * M_PI * std::pow(r, 3)) <= 3 * b.abs_error + 1e-12);
  }
}

TEST_CASE("weighted surface measure mass is the weighted surface area") {
  std::mt19937_64 rng(34);
  for (const auto& mu : {MeasureSpec::gaussian(2), MeasureSpec::radial_power(2, 2)}) {
    for (int i = 0; i < 10; ++i) {
      const Body K = random_polygon(rng);
      const auto m = weighted_surface_measure(mu, K).total_mass();
      const auto a = weighted_surface_area(mu, K);
      CHECK(std::abs(m.value - a.value) <= 3 * (m.abs_error + a.abs_error) + 1e-13);
    }
  }
}

TEST_CASE("ball plus polygon has atoms and arcs") {
  const Body K = add_scaled(Body::box(Vec2(0, 0), Vec2(1, 1)), 0.5, Body::unit_ball(2));
  const SphericalMeasure S = surface_measure(K);
  CHECK(S.atoms().size() == 4);
  CHECK(!S.arcs.empty());
  // perimeter 4 + 2 pi r
  CHECK(S.total_mass().value == doctest::Approx(4 + M_PI).epsilon(1e-10));
}
