#include <cstring>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/errors.hpp"
#include "wbm/inequalities.hpp"
#include "wbm/kernels.hpp"

using namespace wbm;
using namespace testsupport;

TEST_CASE("verdict rule on synthetic values") {
  const auto a = EvalResult::approx(1.0, 0.01, Method::quadrature);
  CHECK(report_ge("x", EvalResult::approx(1.1, 0.01, Method::quadrature), a).verdict == Verdict::holds);
  CHECK(report_ge("x", EvalResult::approx(1.05, 0.01, Method::quadrature), a).verdict == Verdict::inconclusive);
  CHECK(report_ge("x", EvalResult::approx(0.9, 0.01, Method::quadrature), a).verdict == Verdict::violated);
  CHECK(report_le("x", EvalResult::approx(0.9, 0.01, Method::quadrature), a).verdict == Verdict::holds);
  // margin orientation: positive means the inequality holds
  CHECK(report_le("x", EvalResult::exact(1), EvalResult::exact(3)).margin == 2.0);
  CHECK(report_ge("x", EvalResult::exact(1), EvalResult::exact(3)).margin == -2.0);
  // exact equality sits in the rounding floor
  CHECK(report_ge("x", EvalResult::exact(1), EvalResult::exact(1)).verdict == Verdict::inconclusive);
  CHECK(report_eq("x", EvalResult::exact(1), EvalResult::exact(1 + 1e-10), 1e-9).verdict == Verdict::holds);
  CHECK(report_eq("x", EvalResult::exact(1), EvalResult::exact(1.1), 1e-9).verdict == Verdict::violated);

  set_tolerance_scale(100.0);
  CHECK(report_ge("x", EvalResult::approx(1.1, 0.01, Method::quadrature), a).verdict == Verdict::inconclusive);
  set_tolerance_scale(1.0);
  CHECK(verdict_threshold(a, a) >= 3 * 0.02);
}

TEST_CASE("error propagation") {
  const Uncertain x(2.0, 0.1, Method::quadrature), y(3.0, 0.2, Method::qmc);
  const auto p = (x * y).result();
  CHECK(p.value == 6.0);
  CHECK(p.abs_error == doctest::Approx(0.3 * 1 + 0.4 + 0.02));
  CHECK(p.method == Method::qmc);
  // at least the first-order bound, at most the slope at x - err
  CHECK(usqrt(x).error() >= 0.1 / (2 * std::sqrt(2.0)));
  CHECK(usqrt(x).error() <= 0.1 / (2 * std::sqrt(1.9)) + 1e-15);
  CHECK(EvalResult::exact(1).abs_error == 0.0);
  CHECK(EvalResult::approx(1, 0.0, Method::qmc).abs_error > 0.0);
}

TEST_CASE("concavity profiles: derivatives against finite differences") {
  for (const auto& F : {FConcavity::power(0.5), FConcavity::power(1.0 / 3), FConcavity::power(-0.5), FConcavity::log(),
                        FConcavity::normal_inv()}) {
    for (double x : {0.1, 0.3, 0.7, 0.9}) {
      const double h = 1e-4 * x;
      // fourth-order central stencils
      auto d1 = [&](auto f) { return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h); };
      const double dF = d1([&](double t) { return F.F(t); });
      const double d2F = d1([&](double t) { return F.dF(t); });
      CHECK(std::abs(F.dF(x) - dF) <= 1e-8 * (1 + std::abs(dF)));
      CHECK(std::abs(F.d2F(x) - d2F) <= 1e-8 * (1 + std::abs(d2F)));
      CHECK(std::abs(F.inverse(F.F(x)) - x) < 1e-12);
      CHECK(std::abs(F.curvature_ratio(x) + F.d2F(x) / F.dF(x)) < 1e-9 * (1 + std::abs(F.curvature_ratio(x))));
    }
  }
  CHECK(f_concavity_from_string("power:1/3").s() == doctest::Approx(1.0 / 3));
  CHECK(f_concavity_from_string("ehrhard").kind() == FConcavity::Kind::normal_inv);
  CHECK_THROWS_AS(f_concavity_from_string("cubic"), ParseError);
}

TEST_CASE("Brunn-Minkowski and Minkowski's first inequality in the plane") {
  std::mt19937_64 rng(51);
  const MeasureSpec leb = MeasureSpec::lebesgue(2);
  CheckOptions opt;
  opt.path = MixedPath::automatic;
  for (int i = 0; i < 30; ++i) {
    const auto P = random_polygon_vertices(rng), Q = random_polygon_vertices(rng);
    const Body K = as_polytope(P), L = as_polytope(Q);
    CHECK(check_f_concavity(leb, FConcavity::power(0.5), K, L, opt).verdict != Verdict::violated);
    const auto r = minkowski_first(leb, FConcavity::power(0.5), K, L, opt);
    CHECK(r.verdict == Verdict::holds);
    // for s = 1/2 the right side is 2 sqrt(Vol K Vol L)
    CHECK(std::abs(r.rhs.value - 2 * std::sqrt(shoelace(P) * shoelace(Q))) < 1e-10);
  }
  // homothets are the equality case of Brunn-Minkowski
  const Body K = random_polygon(rng);
  CHECK(check_f_concavity(leb, FConcavity::power(0.5), K, dilate(K, 2.0), opt).verdict == Verdict::inconclusive);
}

TEST_CASE("Minkowski second and reverse quadratic forms") {
  std::mt19937_64 rng(52);
  CheckOptions opt;
  opt.path = MixedPath::automatic;
  for (int i = 0; i < 15; ++i) {
    const Body A = random_polygon(rng), B = random_polygon(rng), C = random_polygon(rng);
    CHECK(minkowski_second(MeasureSpec::lebesgue(2), FConcavity::power(0.5), A, B, opt).verdict != Verdict::violated);
    CHECK(reverse_quadratic(MeasureSpec::lebesgue(2), FConcavity::power(0.5), A, B, C, opt).verdict != Verdict::violated);
  }
  CHECK_THROWS_AS(minkowski_second(MeasureSpec::gaussian(2), FConcavity::normal_inv(), random_polygon(rng),
                                   random_polygon(rng), opt),
                  UnsupportedCase);
}

TEST_CASE("Fenchel bounds need the origin") {
  const Body off = Body::box(Vec2(2, 2), Vec2(3, 3));
  const Body ok = Body::box(Vec2(-1, -1), Vec2(1, 1));
  CHECK_THROWS_AS(fenchel_bounds(MeasureSpec::lebesgue(2), 0.5, off, ok, ok), OriginNotContained);
  const auto reps = fenchel_bounds(MeasureSpec::lebesgue(2), 0.5, ok, ok, Body::ball(Vec2(0, 0), 0.5));
  CHECK(reps.size() == 5);
  for (const auto& r : reps) CHECK(r.verdict != Verdict::violated);
}

TEST_CASE("Lebesgue supermodularity: three forms agree") {
  std::mt19937_64 rng(53);
  CheckOptions opt;
  opt.path = MixedPath::automatic;
  const MeasureSpec leb = MeasureSpec::lebesgue(2);
  for (int i = 0; i < 20; ++i) {
    const Body A = random_polygon(rng), B = random_polygon(rng), C = random_polygon(rng);
    std::vector<InequalityReport> forms{supermod_global(leb, A, B, C), supermod_local2(leb, A, B, C, opt),
                                        supermod_local3(leb, A, B, C, opt)};
    for (const auto& f : forms) CHECK(f.verdict == Verdict::holds);
    CHECK(supermod_consistency(forms).verdict == Verdict::holds);
  }
}

TEST_CASE("radial classification of modularity") {
  CHECK(radial_modularity(MeasureSpec::gaussian(2)).profile_class == "neither");
  const auto g1 = radial_modularity(MeasureSpec::gaussian(1));
  CHECK(g1.profile_class == "decreasing");
  CHECK_FALSE(g1.found_sub_violation);
  const auto x2 = radial_modularity(MeasureSpec::radial_power(2, 2));
  CHECK(x2.profile_class == "increasing");
  CHECK_FALSE(x2.found_super_violation);
}

TEST_CASE("log-submodularity constant") {
  // square plus two orthogonal segments is an equality case
  const Body A = Body::box(Vec2(0, 0), Vec2(1, 1));
  const Body B = Body::segment(Vec2(0, 0), Vec2(1, 0)), C = Body::segment(Vec2(0, 0), Vec2(0, 1));
  CHECK(bm_constant(A, B, C).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bm_constant(A, A, A).value == doctest::Approx(9.0 / 16).epsilon(1e-14));
  std::mt19937_64 rng(54);
  for (int i = 0; i < 100; ++i) {
    CHECK(bm_constant(random_polygon(rng), random_polygon(rng), random_polygon(rng)).value <= 1 + 1e-12);
  }
}

TEST_CASE("surface monotonicity for |x|^2 with segments through the origin") {
  std::mt19937_64 rng(55);
  const MeasureSpec x2 = MeasureSpec::radial_power(2, 2);
  for (int i = 0; i < 30; ++i) {
    const Body K = random_polygon(rng, 8, 2.0);
    const Body L = Body::segment(Vec2(0, 0), Vec(2.0 * random_direction(rng)));
    CHECK(surface_monotonicity(x2, K, L).verdict != Verdict::violated);
  }
  // in one dimension a far translate loses Gaussian boundary mass
  const Body K = Body::segment(Vec::Constant(1, 0), Vec::Constant(1, 1));
  const Body far = Body::polytope({Vec::Constant(1, -5)});
  CHECK(surface_monotonicity(MeasureSpec::gaussian(1), K, far).verdict == Verdict::violated);
}

TEST_CASE("sweeps are deterministic and independent of the execution policy") {
  SearchConfig c;
  c.target = "supermod_global";
  c.measure = MeasureSpec::gaussian(2);
  c.bodies = {GenKind::symmetric_polygon, 0.1, 4.0};
  c.budget = 40;
  kernels::set_default_exec(kernels::Exec::serial);
  const auto a = sweep(c);
  kernels::set_default_exec(kernels::Exec::parallel);
  const auto b = sweep(c);
  REQUIRE(a.all.size() == b.all.size());
  for (std::size_t i = 0; i < a.all.size(); ++i) {
    CHECK(std::memcmp(&a.all[i].margin, &b.all[i].margin, sizeof(double)) == 0);
    CHECK(a.all[i].bodies == b.all[i].bodies);
  }
  c.seed += 1;
  const auto d = sweep(c);
  CHECK(d.all.front().margin != a.all.front().margin);
}

TEST_CASE("search conventions") {
  SearchConfig c;
  c.target = "supermod_global";
  c.measure = MeasureSpec::lebesgue(2);
  c.budget = 20;
  CHECK_THROWS_AS(counterexample_search(c), BudgetExhausted);
  c.target = "no_such_thing";
  CHECK_THROWS_AS(sweep(c), UnsupportedConfiguration);
  c.target = "supermod_global";
  c.measure = MeasureSpec::gaussian(2);
  c.bodies = {GenKind::symmetric_polygon, 0.1, 4.0};
  c.budget = 200;
  const auto res = counterexample_search(c);
  CHECK_FALSE(res.violated.empty());
  for (const auto& r : res.violated) CHECK(r.margin < -verdict_threshold(r.lhs, r.rhs));
}

TEST_CASE("class concavity table") {
  CHECK(*class_concavity(MeasureSpec::lebesgue(2), GenKind::polygon) == 0.5);
  CHECK(*class_concavity(MeasureSpec::gaussian(2), GenKind::symmetric_polygon) == 0.5);
  CHECK(*class_concavity(MeasureSpec::gaussian(2), GenKind::origin_polygon) == 0.25);
  CHECK(*class_concavity(MeasureSpec::gaussian(2), GenKind::polygon) == 0.0);
  CHECK_FALSE(class_concavity(MeasureSpec::radial_power(2, 2), GenKind::polygon).has_value());
}
