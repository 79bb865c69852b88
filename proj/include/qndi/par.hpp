#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qndi::par {

/// Execution policy for the data-parallel kernels. `seq` is the plain-loop
/// reference implementation kept for testing; `omp` runs the same arithmetic
/// across OpenMP threads. Both are compared by the unit tests and by the
/// qndi_bench tool.
enum class Exec { seq, omp };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace detail {
// Chunk size for deterministic parallel reductions. Partial sums are formed
// per chunk and combined in index order, so the result is independent of the
// thread count.
inline constexpr std::int64_t kChunk = 4096;
}  // namespace detail

/// Sum of term(i) for i in [0, n). The omp path chunks the index range and
/// combines chunk sums in order, giving run-to-run reproducible output.
template <typename F>
double sum(std::int64_t n, F&& term, Exec exec = Exec::omp) {
  if (n <= 0) return 0.0;
  if (exec == Exec::seq) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  const std::int64_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * detail::kChunk;
    const std::int64_t hi = std::min(lo + detail::kChunk, n);
    double acc = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double acc = 0.0;
  for (double v : partial) acc += v;
  return acc;
}

template <typename F>
void for_index(std::int64_t n, F&& body, Exec exec = Exec::omp) {
  if (n <= 0) return;
  if (exec == Exec::seq) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

/// Minimum of value(i) over [0, n) with the index where it occurs.
/// Ties resolve to the lowest index regardless of thread count.
template <typename F>
std::pair<double, std::int64_t> min_element(std::int64_t n, F&& value,
                                            Exec exec = Exec::omp) {
  std::pair<double, std::int64_t> best{0.0, -1};
  if (n <= 0) return best;
  if (exec == Exec::seq) {
    best = {value(0), 0};
    for (std::int64_t i = 1; i < n; ++i) {
      const double v = value(i);
      if (v < best.first) best = {v, i};
    }
    return best;
  }
  const std::int64_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
  std::vector<std::pair<double, std::int64_t>> partial(
      static_cast<std::size_t>(nchunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * detail::kChunk;
    const std::int64_t hi = std::min(lo + detail::kChunk, n);
    std::pair<double, std::int64_t> local{value(lo), lo};
    for (std::int64_t i = lo + 1; i < hi; ++i) {
      const double v = value(i);
      if (v < local.first) local = {v, i};
    }
    partial[static_cast<std::size_t>(c)] = local;
  }
  best = partial[0];
  for (const auto& p : partial) {
    if (p.first < best.first || (p.first == best.first && p.second < best.second))
      best = p;
  }
  return best;
}

}  // namespace qndi::par
