#include "qndi/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qndi/errors.hpp"

namespace qndi::metrics {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void MeritReport::validate() const {
  if (!(fidelity <= 1.0 + 1e-6))
    throw NumericError("MeritReport: fidelity exceeds 1 beyond tolerance");
  if (!(ps > 0.0) || !(ps <= 1.0 + 1e-6))
    throw NumericError("MeritReport: success probability outside (0, 1]");
}

std::string MeritReport::csv_row() const {
  char buf[170];
  std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g", q, ps, fidelity,
                negativity);
  return buf;
}

double fidelity(const protocols::ProbabilisticResult& out,
                const wigner::GaussPolyWigner& reference, par::Exec exec) {
  if (reference.dim() != 2)
    throw ConfigError("fidelity: reference must be single-mode");
  if (!(out.ps > 0.0))
    throw NumericError("fidelity: zero success probability");
  const auto& nodes = out.slices.nodes();
  const double acc = par::sum(
      static_cast<std::int64_t>(nodes.size()),
      [&](std::int64_t s) {
        const auto& node = nodes[static_cast<std::size_t>(s)];
        return node.weight * wigner::overlap(node.state, reference);
      },
      exec);
  return kTwoPi * acc / out.ps;
}

double fidelity_direct(const wigner::GaussPolyWigner& w,
                       const wigner::GaussPolyWigner& reference) {
  if (w.dim() != 2 || reference.dim() != 2)
    throw ConfigError("fidelity_direct: states must be single-mode");
  return kTwoPi * wigner::overlap(w, reference);
}

std::pair<double, std::array<double, 2>> minimize_on_plane(
    const std::function<double(double, double)>& f,
    const NegativitySearch& search, par::Exec exec) {
  const int n = search.grid;
  if (n < 2) throw ConfigError("minimize_on_plane: grid must be >= 2");
  const double h = search.half_extent;
  const double step = 2.0 * h / (n - 1);
  auto grid_value = [&](std::int64_t flat) {
    const int i = static_cast<int>(flat / n);
    const int j = static_cast<int>(flat % n);
    return f(-h + step * i, -h + step * j);
  };
  auto [best, flat] = par::min_element(
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n), grid_value,
      exec);
  double bx = -h + step * static_cast<double>(flat / n);
  double bp = -h + step * static_cast<double>(flat % n);

  // Coordinate descent from the best grid point, halving the step whenever
  // no axis move improves.
  double s = step;
  double value = best;
  while (s > search.step_tol) {
    bool improved = false;
    for (int axis = 0; axis < 2; ++axis) {
      for (double dir : {-1.0, 1.0}) {
        const double cx = bx + (axis == 0 ? dir * s : 0.0);
        const double cp = bp + (axis == 1 ? dir * s : 0.0);
        const double v = f(cx, cp);
        if (v < value) {
          value = v;
          bx = cx;
          bp = cp;
          improved = true;
        }
      }
    }
    if (!improved) s *= 0.5;
  }
  return {value, {bx, bp}};
}

double negativity(const protocols::ProbabilisticResult& out,
                  const NegativitySearch& search, par::Exec exec) {
  if (!(out.ps > 0.0))
    throw NumericError("negativity: zero success probability");
  auto f = [&](double x, double p) {
    const std::array<double, 2> pt{x, p};
    return out.slices.weighted_evaluate(pt) / out.ps;
  };
  return minimize_on_plane(f, search, exec).first;
}

double invert_monotone(const std::function<double(double)>& ps_of_q,
                       double target, double q_min, double q_max,
                       double rel_tol, int max_iter) {
  if (!(target > 0.0) || !(target < 1.0))
    throw ConfigError("invert_ps: target must lie in (0, 1)");
  double lo = q_min;
  double hi = q_max;
  const double ps_lo = ps_of_q(lo);
  const double ps_hi = ps_of_q(hi);
  if (target < ps_lo || target > ps_hi)
    throw UnreachableTargetError(target, ps_lo, ps_hi);
  // Bisection in log(Q); PS spans many orders of magnitude over the bracket.
  for (int it = 0; it < max_iter; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double ps_mid = ps_of_q(mid);
    if (std::abs(ps_mid - target) <= rel_tol * target) return mid;
    if (ps_mid < target)
      lo = mid;
    else
      hi = mid;
  }
  throw NumericError("invert_ps: bisection did not converge");
}

double invert_ps(const protocols::ProbabilisticPipeline& pipeline,
                 double target_ps, const InvertOptions& opts, par::Exec exec) {
  auto ps_of_q = [&](double q) {
    if (!opts.adaptive) return pipeline.ps(q, opts.quad_order, exec);
    return pipeline.run(q, opts.quad_order, true, exec).ps;
  };
  return invert_monotone(ps_of_q, target_ps, opts.q_min, opts.q_max,
                         opts.rel_tol, opts.max_iter);
}

}  // namespace qndi::metrics
