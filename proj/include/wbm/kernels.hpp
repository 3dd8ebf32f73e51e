#pragma once

// Parallel kernels with serial references. Work is split into fixed-size blocks whose
// partial results are combined in index order, so results do not depend on the number
// of threads or on the execution policy.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace wbm::kernels {

enum class Exec { serial, parallel };

/// Policy used when callers do not pass one explicitly.
Exec default_exec();
void set_default_exec(Exec e);
int max_threads();

inline constexpr std::size_t kBlock = 256;

/// Sum of f(i) for i in [0, n).
template <class F>
double blocked_sum(std::size_t n, F&& f, Exec exec = default_exec()) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nb, 0.0);
  auto run_block = [&](std::size_t b) {
    double s = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) s += f(i);
    partial[b] = s;
  };
  if (exec == Exec::parallel) {
    const long long nbl = static_cast<long long>(nb);
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long b = 0; b < nbl; ++b) {
      try {
        run_block(static_cast<std::size_t>(b));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (std::size_t b = 0; b < nb; ++b) run_block(b);
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

/// out[i] = f(i) for i in [0, n); each index computed independently.
template <class R, class F>
std::vector<R> map(std::size_t n, F&& f, Exec exec = default_exec()) {
  std::vector<R> out(n);
  if (exec == Exec::parallel) {
    const long long nl = static_cast<long long>(n);
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < nl; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

}  // namespace wbm::kernels
