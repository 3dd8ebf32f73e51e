#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/errors.hpp"
#include "wbm/measures.hpp"
#include "wbm/mixed.hpp"
#include "wbm/special.hpp"

using namespace wbm;
using namespace testsupport;

namespace {

Body interval(double lo, double hi) { return Body::segment(Vec::Constant(1, lo), Vec::Constant(1, hi)); }

double phi1(double x) { return std::exp(-x * x / 2) / std::sqrt(2 * M_PI); }

// a^2 + b^2 + f(a)^2 + f(b)^2 + 2 int f sqrt(1 + f'^2) for the upper chain f of P over [a, b]
double upper_chain_expression(std::vector<Vec2> P) {
  double a = INFINITY, b = -INFINITY;
  for (const auto& p : P) a = std::min(a, p.x()), b = std::max(b, p.x());
  auto top = [&](double x) {
    double best = -INFINITY;
    for (const auto& p : P) {
      if (std::abs(p.x() - x) < 1e-12) best = std::max(best, p.y());
    }
    return best;
  };
  // upper chain: hull vertices on the upper side, walked from a to b
  std::sort(P.begin(), P.end(), [](const Vec2& u, const Vec2& v) { return u.x() < v.x(); });
  std::vector<Vec2> chain;
  for (const auto& p : P) {
    while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) >= 0) chain.pop_back();
    chain.push_back(p);
  }
  chain.front() = Vec2(a, top(a));
  chain.back() = Vec2(b, top(b));
  double integral = 0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    integral += (chain[i + 1] - chain[i]).norm() * (chain[i].y() + chain[i + 1].y()) / 2;
  }
  const double fa = chain.front().y(), fb = chain.back().y();
  return a * a + b * b + fa * fa + fb * fb + 2 * integral;
}

}  // namespace

TEST_CASE("Richardson recovers a polynomial limit") {
  std::vector<double> eps, g, err;
  for (int k = 0; k <= 6; ++k) {
    const double e = 0.2 * std::pow(2.0, -k);
    eps.push_back(e);
    g.push_back(1.5 + 2 * e - 3 * e * e + 0.5 * e * e * e);
    err.push_back(1e-16);
  }
  const auto r = richardson(eps, g, err, 3);
  CHECK(r.method == Method::fd_extrapolated);
  CHECK(std::abs(r.value - 1.5) <= 3 * r.abs_error + 1e-14);
  CHECK(r.abs_error < 1e-10);
}

TEST_CASE("Richardson refuses a sequence that stops settling") {
  std::vector<double> eps, g, err;
  for (int k = 0; k <= 6; ++k) {
    const double e = 0.2 * std::pow(2.0, -k);
    eps.push_back(e);
    g.push_back(1.0 + 2 * e);
    err.push_back(1e-16);
  }
  g.back() += 1e-3;
  CHECK_THROWS_AS(richardson(eps, g, err, 3), Inconclusive);
}

TEST_CASE("FD schedule validation") {
  FDSchedule s = FDSchedule::standard();
  CHECK_NOTHROW(s.validate());
  s.epsilons = {0.1, 0.2};
  CHECK_THROWS(s.validate());
}

TEST_CASE("first mixed measure: formula against finite differences") {
  std::mt19937_64 rng(41);
  for (const auto& mu : {MeasureSpec::lebesgue(2), MeasureSpec::gaussian(2), MeasureSpec::radial_power(2, 2)}) {
    for (int i = 0; i < 8; ++i) {
      const Body K = random_polygon(rng), L = random_polygon(rng);
      const auto f = mixed1_formula(mu, K, L), d = mixed1_fd(mu, K, L);
      CHECK(std::abs(f.value - d.value) <= std::max(1e-3 * std::abs(d.value), 3 * (f.abs_error + d.abs_error)));
    }
  }
}

TEST_CASE("Lebesgue reductions") {
  std::mt19937_64 rng(42);
  const MeasureSpec leb = MeasureSpec::lebesgue(2);
  for (int i = 0; i < 20; ++i) {
    const auto P = random_polygon_vertices(rng), Q = random_polygon_vertices(rng), R = random_polygon_vertices(rng);
    const Body K = as_polytope(P), L = as_polytope(Q), M = as_polytope(R);
    CHECK(std::abs(mixed1_formula(leb, K, K).value - 2 * shoelace(P)) < 1e-12);
    CHECK(std::abs(mixed1_formula(leb, K, Body::unit_ball(2)).value - perimeter(P)) < 1e-12);
    const double polar = measure(leb, minkowski_sum(L, M)).value - shoelace(Q) - shoelace(R);
    const auto v = mixed2_formula(leb, K, L, M);
    CHECK(std::abs(v.value - polar) <= 3 * v.abs_error + 1e-12);
  }
}

TEST_CASE("one-dimensional closed forms") {
  const MeasureSpec g = MeasureSpec::gaussian(1);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int i = 0; i < 30; ++i) {
    double a = U(rng), b = U(rng), c = U(rng), d = U(rng), e = U(rng), f = U(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    if (e > f) std::swap(e, f);
    b += 0.05;
    const Body A = interval(a, b), B = interval(c, d), C = interval(e, f);
    // d/dt gamma([a + tc, b + td]) = phi(b) d - phi(a) c
    CHECK(mixed1_formula(g, A, B).value == doctest::Approx(phi1(b) * d - phi1(a) * c).epsilon(1e-12));
    const double d2 = -b * phi1(b) * d * f + a * phi1(a) * c * e;
    CHECK(mixed2_formula(g, A, B, C).value == doctest::Approx(d2).epsilon(1e-10).scale(1));
    const auto fd = mixed2_fd(g, A, B, C);
    CHECK(std::abs(fd.value - d2) <= 3 * fd.abs_error + 1e-9);
  }
}

TEST_CASE("second mixed measure: Schwarz symmetry and FD agreement") {
  std::mt19937_64 rng(44);
  const MeasureSpec g = MeasureSpec::gaussian(2);
  for (int i = 0; i < 5; ++i) {
    const Body A = random_polygon(rng), B = random_polygon(rng), C = random_polygon(rng);
    const auto bc = mixed2_formula(g, A, B, C), cb = mixed2_formula(g, A, C, B);
    CHECK(std::abs(bc.value - cb.value) <= 3 * (bc.abs_error + cb.abs_error) + 1e-10);
    const auto fd = mixed2_fd(g, A, B, C);
    CHECK(std::abs(fd.value - bc.value) <= std::max(1e-3 * std::abs(bc.value), 3 * (fd.abs_error + bc.abs_error)));
    const auto grid = mixed2_fd_grid(g, A, B, C);
    CHECK(std::abs(grid.value - bc.value) <= std::max(1e-3 * std::abs(bc.value), 3 * (grid.abs_error + bc.abs_error)));
  }
}

TEST_CASE("segment formula against the boundary-chain expression for |x|^2") {
  std::mt19937_64 rng(45);
  const MeasureSpec x2 = MeasureSpec::radial_power(2, 2);
  for (int i = 0; i < 40; ++i) {
    const auto P = random_polygon_vertices(rng, 9, 1.5);
    const auto v = mixed2_segment(x2, as_polytope(P), Vec2(0, 1), Body::unit_ball(2));
    const double oracle = upper_chain_expression(P);
    CHECK(std::abs(v.value - oracle) <= 3 * v.abs_error + 1e-10 * (1 + std::abs(oracle)));
  }
}

TEST_CASE("specialization chain: segment formula, general formula and polarization agree for Lebesgue") {
  std::mt19937_64 rng(46);
  const MeasureSpec leb = MeasureSpec::lebesgue(2);
  for (int i = 0; i < 10; ++i) {
    const auto Pa = random_polygon_vertices(rng), Pc = random_polygon_vertices(rng);
    const Vec2 v = 0.8 * random_direction(rng);
    const Body A = as_polytope(Pa), C = as_polytope(Pc), S = Body::segment(Vec2(0, 0), v);
    const double polar = measure(leb, minkowski_sum(S, C)).value - shoelace(Pc);
    const auto seg = mixed2_segment(leb, A, v, C);
    const auto gen = mixed2_formula(leb, A, S, C);
    const auto fd = mixed2_fd(leb, A, S, C);
    CHECK(std::abs(seg.value - polar) <= 1e-3 * std::abs(polar) + 3 * seg.abs_error);
    CHECK(std::abs(gen.value - polar) <= 1e-3 * std::abs(polar) + 3 * gen.abs_error);
    CHECK(std::abs(fd.value - polar) <= 1e-3 * std::abs(polar) + 3 * fd.abs_error);
  }
}

TEST_CASE("homogeneity of |x|^2 mixed measures") {
  std::mt19937_64 rng(47);
  const MeasureSpec x2 = MeasureSpec::radial_power(2, 2);
  for (int i = 0; i < 10; ++i) {
    const Body K = random_polygon(rng), L = random_polygon(rng);
    const double t = 0.5 + 0.2 * i;
    const auto a = mixed1_formula(x2, dilate(K, t), L), b = mixed1_formula(x2, K, L);
    CHECK(std::abs(a.value - std::pow(t, 3) * b.value) <= 1e-10 * (1 + std::abs(a.value)));
    const auto kk = mixed1_formula(x2, K, K);
    CHECK(std::abs(kk.value - 4 * measure(x2, K).value) < 1e-10 * (1 + kk.value));
  }
  const auto suite = homogeneity_suite(x2, random_polygon(rng), random_polygon(rng), random_polygon(rng));
  for (const auto& r : suite) CHECK(r.verdict == Verdict::holds);
}

TEST_CASE("disk flux: zero for constant density, closed form for the Gaussian") {
  std::mt19937_64 rng(48);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const auto f = disk_normal_flux(MeasureSpec::lebesgue(2), Vec(random_direction(rng)), 0.1 + std::abs(U(rng)), Vec(Vec2(U(rng), U(rng))));
    CHECK(std::abs(f.value) <= 3 * f.abs_error);
  }
  const auto g = disk_normal_flux(MeasureSpec::gaussian(2), Vec2(1, 0), 0.5, Vec2(1.0, 0.3));
  const double oracle = -phi1(1.0) * (normal_cdf(0.8) - normal_cdf(-0.2));
  CHECK(std::abs(g.value - oracle) <= 3 * g.abs_error + 1e-12);
  CHECK(g.value < -3 * g.abs_error);
}

TEST_CASE("weighted surface area by finite differences") {
  const auto fd = weighted_surface_area_fd(MeasureSpec::radial_power(2, 2), Body::box(Vec2(-1, -1), Vec2(1, 1)));
  CHECK(std::abs(fd.value - 32.0 / 3) < 1e-6);
  CHECK(std::abs(fd.value - 32.0 / 3) <= 3 * fd.abs_error + 1e-9);
}
