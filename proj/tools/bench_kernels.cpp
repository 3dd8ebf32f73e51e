// Serial reference against the OpenMP kernels on the hot paths: QMC measure, weighted
// surface area and an inequality sweep. Results must agree bit for bit.
#include <chrono>
#include <cstdio>
#include <cstring>

#include "wbm/inequalities.hpp"
#include "wbm/kernels.hpp"
#include "wbm/measures.hpp"

using namespace wbm;

namespace {

template <class F>
double time_it(F&& f, double& value) {
  const auto t0 = std::chrono::steady_clock::now();
  value = f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
bool bench(const char* name, F&& f) {
  double vs = 0, vp = 0;
  kernels::set_default_exec(kernels::Exec::serial);
  const double ts = time_it(f, vs);
  kernels::set_default_exec(kernels::Exec::parallel);
  const double tp = time_it(f, vp);
  const bool same = std::memcmp(&vs, &vp, sizeof(double)) == 0;
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2f  %s\n", name, ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");
  return same;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::max_threads());
  bool ok = true;

  const Body K = Body::polytope({Vec2(-1, -0.5), Vec2(1.2, -0.7), Vec2(0.8, 1.1), Vec2(-0.6, 0.9)});
  ok &= bench("qmc gaussian polygon", [&] {
    EvalOptions eo;
    eo.force_qmc = true;
    eo.qmc_points = 1 << 16;
    return measure_qmc(MeasureSpec::gaussian(2), K, eo).value;
  });

  const Body B3 = Body::zonotope(Vec::Zero(3), {Vec3(1, 0, 0), Vec3(0.3, 1, 0), Vec3(0.2, 0.1, 0.8)});
  ok &= bench("qmc gaussian zonotope 3d", [&] {
    EvalOptions eo;
    eo.qmc_points = 1 << 15;
    return measure_qmc(MeasureSpec::gaussian(3), B3, eo).value;
  });

  ok &= bench("sweep supermod gaussian", [&] {
    SearchConfig c;
    c.target = "supermod_global";
    c.measure = MeasureSpec::gaussian(2);
    c.bodies = {GenKind::symmetric_polygon, 0.1, 4.0};
    c.budget = 200;
    double s = 0;
    for (const auto& r : sweep(c).all) s += r.margin;
    return s;
  });

  return ok ? 0 : 1;
}
