// Benchmark comparing the serial reference loops against the OpenMP kernels
// on a representative post-selected transfer configuration.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qndi/metrics.hpp"
#include "qndi/par.hpp"
#include "qndi/protocols.hpp"
#include "qndi/wigner.hpp"

using namespace qndi;
using clock_type = std::chrono::steady_clock;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    const double dt =
        std::chrono::duration<double, std::milli>(clock_type::now() - t0)
            .count();
    if (dt < best) best = dt;
  }
  return best;
}

void report(const std::string& name, const std::string& size, double seq_ms,
            double omp_ms, double seq_val, double omp_val) {
  const double rel = std::abs(seq_val - omp_val) /
                     std::max(std::abs(seq_val), 1e-300);
  std::printf("%-28s %-14s %10.2f ms %10.2f ms   x%-5.2f  rel diff %.1e\n",
              name.c_str(), size.c_str(), seq_ms, omp_ms, seq_ms / omp_ms,
              rel);
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  if (argc > 1) reps = std::max(1, std::atoi(argv[1]));
  std::printf("threads: %d, best of %d reps\n", par::max_threads(), reps);
  std::printf("%-28s %-14s %13s %13s   %-7s\n", "kernel", "size", "serial",
              "openmp", "speedup");

  const auto sp = wigner::GaussPolyWigner::single_photon();
  protocols::SequentialConfig cfg;
  cfg.kappa1 = cfg.kappa2 = 0.5;
  const protocols::ProbabilisticPipeline pipeline(sp, cfg, 0.5, 5.0);

  // success probability: window reduction + per-slice analytic totals
  {
    const auto slices = wigner::window_reduce(pipeline.reduced(), 0, 1, 0.5, 128);
    double vs = 0.0, vp = 0.0;
    const double ts = time_best_of(
        reps, [&] { vs = slices.weighted_total(par::Exec::seq); });
    const double tp = time_best_of(
        reps, [&] { vp = slices.weighted_total(par::Exec::omp); });
    report("window weighted total", "128^2 slices", ts, tp, vs, vp);
  }

  // output distribution on a dense grid
  {
    const auto slices = wigner::window_reduce(pipeline.reduced(), 0, 1, 0.5, 48);
    const int n = 161;
    std::vector<double> pts, out(static_cast<std::size_t>(n) * n);
    pts.reserve(out.size() * 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        pts.push_back(-4.0 + 8.0 * i / (n - 1));
        pts.push_back(-4.0 + 8.0 * j / (n - 1));
      }
    double vs = 0.0, vp = 0.0;
    const double ts = time_best_of(reps, [&] {
      slices.evaluate_grid(pts, out, par::Exec::seq);
      vs = out[out.size() / 2];
    });
    const double tp = time_best_of(reps, [&] {
      slices.evaluate_grid(pts, out, par::Exec::omp);
      vp = out[out.size() / 2];
    });
    report("output grid evaluation", "161^2 x 48^2", ts, tp, vs, vp);
  }

  // negativity search (grid + refinement)
  {
    const auto out = pipeline.run(0.5, 48, false);
    double vs = 0.0, vp = 0.0;
    const double ts = time_best_of(
        reps, [&] { vs = metrics::negativity(out, {}, par::Exec::seq); });
    const double tp = time_best_of(
        reps, [&] { vp = metrics::negativity(out, {}, par::Exec::omp); });
    report("negativity search", "81^2 grid", ts, tp, vs, vp);
  }

  // reference trapezoid integrator on the reduced state
  {
    const auto& reduced = pipeline.reduced();
    const std::vector<wigner::GridAxis> axes{
        {-0.5, 0.5, 25}, {-0.5, 0.5, 25}, {-12.0, 12.0, 61}, {-12.0, 12.0, 61}};
    auto f = [&](std::span<const double> pt) { return reduced.evaluate(pt); };
    double vs = 0.0, vp = 0.0;
    const double ts = time_best_of(
        reps, [&] { vs = wigner::brute_force_box(f, axes, par::Exec::seq); });
    const double tp = time_best_of(
        reps, [&] { vp = wigner::brute_force_box(f, axes, par::Exec::omp); });
    report("trapezoid reference", "25^2 x 61^2", ts, tp, vs, vp);
  }

  return 0;
}
