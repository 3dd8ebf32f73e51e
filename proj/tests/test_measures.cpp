#include <cstring>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/errors.hpp"
#include "wbm/kernels.hpp"
#include "wbm/measures.hpp"
#include "wbm/special.hpp"

using namespace wbm;
using namespace testsupport;

namespace {
Body interval(double lo, double hi) { return Body::segment(Vec::Constant(1, lo), Vec::Constant(1, hi)); }
}  // namespace

TEST_CASE("Lebesgue polygon area matches the shoelace formula") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto P = random_polygon_vertices(rng);
    const auto r = measure(MeasureSpec::lebesgue(2), as_polytope(P));
    CHECK(r.method == Method::exact);
    CHECK(std::abs(r.value - shoelace(P)) < 1e-13);
  }
}

TEST_CASE("Gaussian measure of [-1, 1] through erf") {
  const auto r = measure(MeasureSpec::gaussian(1), interval(-1, 1));
  CHECK(std::abs(r.value - std::erf(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(r.value - 0.6826895) < 1e-7);
}

TEST_CASE("Gaussian boxes are products of interval masses") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 3;
    Vec lo(n), hi(n);
    double expect = 1.0;
    for (int k = 0; k < n; ++k) {
      double a = U(rng), b = U(rng);
      if (a > b) std::swap(a, b);
      b += 0.01;
      lo[k] = a;
      hi[k] = b;
      expect *= gauss_interval(a, b);
    }
    const auto r = measure(MeasureSpec::gaussian(n), Body::box(lo, hi));
    CHECK(std::abs(r.value - expect) < 1e-13);
  }
}

TEST_CASE("|x|^2 on squares by hand") {
  // int over [0,1]^2 of x^2 + y^2 = 2/3; over [-1,1]^2 it is 8/3
  CHECK(measure(MeasureSpec::radial_power(2, 2), Body::box(Vec2(0, 0), Vec2(1, 1))).value == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(measure(MeasureSpec::radial_power(2, 2), Body::box(Vec2(-1, -1), Vec2(1, 1))).value == doctest::Approx(8.0 / 3).epsilon(1e-14));
}

TEST_CASE("polygon monomials on the unit square") {
  const std::vector<Vec2> sq{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; a + b <= 6; ++b) {
      CHECK(polygon_monomial(sq, a, b) == doctest::Approx(1.0 / ((a + 1) * (b + 1))).epsilon(1e-13));
    }
  }
}

TEST_CASE("alpha-homogeneity of |x|^p") {
  std::mt19937_64 rng(23);
  const MeasureSpec mu = MeasureSpec::radial_power(2, 2);
  REQUIRE(mu.homogeneity().has_value());
  CHECK(*mu.homogeneity() == 4.0);
  for (int i = 0; i < 30; ++i) {
    const Body K = random_polygon(rng);
    const double t = 0.3 + 0.1 * i;
    const double a = measure(mu, K).value, b = measure(mu, dilate(K, t)).value;
    CHECK(std::abs(b - std::pow(t, 4) * a) < 1e-12 * (1 + b));
  }
}

TEST_CASE("Gaussian polygon quadrature is rotation invariant and agrees with QMC") {
  std::mt19937_64 rng(24);
  const MeasureSpec g = MeasureSpec::gaussian(2);
  for (int i = 0; i < 10; ++i) {
    const auto P = random_polygon_vertices(rng);
    const double th = 0.7 * i;
    std::vector<Vec2> R;
    for (const auto& p : P) R.emplace_back(std::cos(th) * p.x() - std::sin(th) * p.y(), std::sin(th) * p.x() + std::cos(th) * p.y());
    const auto a = measure(g, as_polytope(P)), b = measure(g, as_polytope(R));
    CHECK(std::abs(a.value - b.value) <= 3 * (a.abs_error + b.abs_error) + 1e-14);
    const auto q = measure_qmc(g, as_polytope(P));
    CHECK(q.method == Method::qmc);
    CHECK(std::abs(q.value - a.value) <= 5 * q.abs_error + a.abs_error);
  }
}

TEST_CASE("lower-dimensional bodies have zero measure") {
  const Body seg = Body::segment(Vec2(-1, 0), Vec2(1, 2));
  for (const auto& mu : {MeasureSpec::lebesgue(2), MeasureSpec::gaussian(2), MeasureSpec::radial_power(2, 2)}) {
    const auto r = measure(mu, seg);
    CHECK(r.value == 0.0);
  }
}

TEST_CASE("Gaussian total mass over a large box") {
  // mass outside [-6, 6]^3 is below 1e-8
  EvalOptions eo;
  eo.qmc_points = 1 << 17;
  const auto r = measure_qmc(MeasureSpec::gaussian(3), Body::box(Vec::Constant(3, -6), Vec::Constant(3, 6)), eo);
  CHECK(std::abs(r.value - 1.0) < 1e-3);
  CHECK(std::abs(r.value - 1.0) <= 5 * r.abs_error + 1e-8);
}

TEST_CASE("QMC is identical under serial and parallel execution") {
  std::mt19937_64 rng(25);
  const Body K = random_polygon(rng);
  EvalOptions eo;
  eo.qmc_points = 1 << 12;
  kernels::set_default_exec(kernels::Exec::serial);
  const auto a = measure_qmc(MeasureSpec::gaussian(2), K, eo);
  kernels::set_default_exec(kernels::Exec::parallel);
  const auto b = measure_qmc(MeasureSpec::gaussian(2), K, eo);
  CHECK(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.abs_error, &b.abs_error, sizeof(double)) == 0);
  eo.seed += 1;
  const auto c = measure_qmc(MeasureSpec::gaussian(2), K, eo);
  CHECK(c.value != a.value);
}

TEST_CASE("ball measures") {
  // Lebesgue disk and the Gaussian mass of a centered disk 1 - exp(-r^2/2)
  const auto d = measure(MeasureSpec::lebesgue(2), Body::ball(Vec2(0.3, -0.2), 0.7));
  CHECK(std::abs(d.value - M_PI * 0.49) <= 3 * d.abs_error + 1e-13);
  const auto gd = measure(MeasureSpec::gaussian(2), Body::ball(Vec2(0, 0), 1.3));
  CHECK(std::abs(gd.value - (1 - std::exp(-1.3 * 1.3 / 2))) <= 3 * gd.abs_error + 1e-12);
}

TEST_CASE("special functions") {
  for (double x : {-5.0, -1.0, 0.0, 0.3, 2.0, 6.0}) {
    CHECK(normal_cdf(x) == doctest::Approx(0.5 * std::erfc(-x / std::sqrt(2.0))).epsilon(1e-15));
    CHECK(normal_cdf(normal_quantile(normal_cdf(x))) == doctest::Approx(normal_cdf(x)).epsilon(1e-12));
  }
  CHECK(sphere_area(2) == doctest::Approx(2 * M_PI));
  CHECK(ball_volume(3) == doctest::Approx(4 * M_PI / 3));
}

TEST_CASE("measure parsing") {
  CHECK(parse_measure("gaussian", 2).kind() == DensityKind::gaussian);
  CHECK(parse_measure(R"({"type":"radial_power","p":2})", 2).p() == 2.0);
  CHECK(parse_measure(R"({"type":"radial_exp","family":"power","q":1.5})", 2).kind() == DensityKind::radial_exp);
  CHECK_THROWS_AS(parse_measure("cauchy", 2), ParseError);
  CHECK_THROWS_AS(parse_measure(R"({"type":"radial_exp","family":"power","q":0.5})", 2), InvalidMeasure);
}

TEST_CASE("radial class membership") {
  CHECK(in_radial_class(MeasureSpec::radial_exp_half_square(2)));
  CHECK(in_radial_class(MeasureSpec::radial_exp_power(2, 1.5)));
  CHECK(in_radial_class(MeasureSpec::radial_exp_log(2, 2.0)));
}
