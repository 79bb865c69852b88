#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qndi/errors.hpp"
#include "qndi/par.hpp"
#include "qndi/phase_space.hpp"
#include "qndi/polynomial.hpp"

namespace qndi::wigner {

inline constexpr int kDefaultDegreeCap = 8;

/// Condition-number threshold above which marginalization solves are
/// rejected instead of silently truncated.
inline constexpr double kConditionLimit = 1e12;

/// Phase-space quasi-distribution of the form
///
///   W(xi) = P(xi) * exp(-1/2 xi^T A xi + b^T xi + c)
///
/// with P a real polynomial, A symmetric positive definite (so that every
/// integral below converges) and c a log-scale. The class is closed under
/// linear substitution, products, full-line marginalization and windowed
/// slicing, which is what the transfer pipeline needs end to end.
///
/// Convention: vacuum has quadrature variance 1/2, i.e. W_vac = exp(-x^2-p^2)/pi.
class GaussPolyWigner {
 public:
  GaussPolyWigner(MultiPoly poly, Eigen::MatrixXd quad_form,
                  Eigen::VectorXd linear, double log_scale,
                  int degree_cap = kDefaultDegreeCap);

  /// Thermal state with isotropic variance V >= 1/2:
  /// W(x,p) = exp(-(x^2+p^2)/(2V)) / (2 pi V). V = 1/2 is vacuum.
  static GaussPolyWigner thermal(double variance);
  static GaussPolyWigner vacuum() { return thermal(0.5); }

  /// Single photon: W(x,p) = (2x^2 + 2p^2 - 1) exp(-x^2-p^2) / pi.
  static GaussPolyWigner single_photon();

  int dim() const { return static_cast<int>(quad_form_.rows()); }
  const MultiPoly& poly() const { return poly_; }
  const Eigen::MatrixXd& quad_form() const { return quad_form_; }
  const Eigen::VectorXd& linear() const { return linear_; }
  double log_scale() const { return log_scale_; }
  int degree_cap() const { return degree_cap_; }

  double evaluate(std::span<const double> point) const;
  double evaluate(double x, double p) const {
    const std::array<double, 2> pt{x, p};
    return evaluate(pt);
  }

 private:
  MultiPoly poly_;
  Eigen::MatrixXd quad_form_;
  Eigen::VectorXd linear_;
  double log_scale_;
  int degree_cap_;
};

/// One single-mode state with the mode it occupies in the joint phase space.
struct ModeState {
  GaussPolyWigner state;
  phase_space::Mode mode;
};

/// Tensor product of three single-mode states placed at their mode's pair of
/// variables in the canonical 6-variable ordering. Each mode must be covered
/// exactly once.
GaussPolyWigner product_embed(const std::vector<ModeState>& states);

/// W ∘ T, i.e. the function xi -> W(T xi). The total integral is preserved
/// whenever |det T| = 1 (any symplectic matrix). Throws on singular T.
GaussPolyWigner substitute_linear(const GaussPolyWigner& w,
                                  const Eigen::MatrixXd& t);
GaussPolyWigner substitute_linear(const GaussPolyWigner& w,
                                  const phase_space::SymplecticMatrix& t);

/// Integrate the listed variables over the full real line (analytically, by
/// completing the square and Gaussian moment expansion). `vars` must be a
/// non-empty proper subset of the variables. Throws NumericError when the
/// block to be integrated is ill-conditioned beyond kConditionLimit.
GaussPolyWigner marginalize_full(const GaussPolyWigner& w,
                                 std::span<const int> vars);

/// Integral over all of phase space.
double total_integral(const GaussPolyWigner& w);

/// Pointwise product as a GaussPolyWigner (sum of quadratic forms).
GaussPolyWigner product(const GaussPolyWigner& a, const GaussPolyWigner& b);

/// integral of W1 * W2 over the common phase space. Note the fidelity
/// convention multiplies this by 2 pi.
double overlap(const GaussPolyWigner& a, const GaussPolyWigner& b);

/// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(double a, double b,
                                                      int order);

/// Finite-window reduction of two variables: a tensor Gauss-Legendre grid on
/// [-Q, Q]^2 where each node fixes the windowed variables, leaving a weighted
/// family of lower-dimensional slices. Integrals against the window become
/// weighted sums over the slices; all slices share the same quadratic form.
class WindowSlices {
 public:
  struct Node {
    double weight;
    std::array<double, 2> fixed;
    GaussPolyWigner state;
  };

  WindowSlices(std::array<int, 2> vars, double q, int order,
               std::vector<Node> nodes);

  const std::array<int, 2>& vars() const { return vars_; }
  double q() const { return q_; }
  int order() const { return order_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int slice_dim() const { return slice_dim_; }

  /// sum_s w_s * total_integral(slice_s)
  double weighted_total(par::Exec exec = par::Exec::omp) const;

  /// sum_s w_s * slice_s(point)
  double weighted_evaluate(std::span<const double> point) const;

  /// weighted_evaluate on many points; parallel over points.
  void evaluate_grid(std::span<const double> flat_points,
                     std::span<double> out,
                     par::Exec exec = par::Exec::omp) const;

 private:
  std::array<int, 2> vars_;
  double q_;
  int order_;
  int slice_dim_;
  std::vector<Node> nodes_;

  // Flattened slice data for the evaluation kernels: the quadratic form is
  // shared, only the linear part, scale and polynomial vary per slice.
  struct FlatTerm {
    std::array<std::int8_t, 6> expo;
    double coeff;
  };
  Eigen::MatrixXd shared_quad_;
  std::vector<double> weight_, log_scale_;
  std::vector<Eigen::VectorXd> lin_;
  std::vector<std::vector<FlatTerm>> terms_;
};

/// Slice W on a Gauss-Legendre grid over [-Q, Q]^2 in variables
/// (var_a, var_b). Requires Q > 0, order >= 2 and at least one remaining
/// variable. Weights sum to (2Q)^2.
WindowSlices window_reduce(const GaussPolyWigner& w, int var_a, int var_b,
                           double q, int order);

/// One axis of a trapezoid-rule grid with n points on [lo, hi].
struct GridAxis {
  double lo;
  double hi;
  int n;
};

/// Independent reference integrator: composite trapezoid rule over a box,
/// evaluating the integrand pointwise. Used by the test suites as the oracle
/// for the analytic integration paths; it shares no code with them.
template <typename F>
double brute_force_box(F&& f, std::span<const GridAxis> axes,
                       par::Exec exec = par::Exec::seq) {
  const int d = static_cast<int>(axes.size());
  if (d < 1 || d > 8)
    throw ConfigError("brute_force_box: 1..8 axes supported");
  std::int64_t total = 1;
  for (const auto& ax : axes) {
    if (ax.n < 2 || !(ax.lo < ax.hi))
      throw ConfigError("brute_force_box: axis needs n >= 2 and lo < hi");
    total *= ax.n;
  }
  std::vector<double> step(axes.size());
  double cell = 1.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    step[i] = (axes[i].hi - axes[i].lo) / (axes[i].n - 1);
    cell *= step[i];
  }
  auto term = [&](std::int64_t flat) {
    std::array<double, 8> pt{};
    double wt = 1.0;
    std::int64_t rest = flat;
    for (int i = d - 1; i >= 0; --i) {
      const auto ui = static_cast<std::size_t>(i);
      const std::int64_t k = rest % axes[ui].n;
      rest /= axes[ui].n;
      pt[ui] = axes[ui].lo + step[ui] * static_cast<double>(k);
      if (k == 0 || k == axes[ui].n - 1) wt *= 0.5;
    }
    return wt * f(std::span<const double>(pt.data(), axes.size()));
  };
  return cell * par::sum(total, term, exec);
}

/// Trapezoid-rule integral of W over the cube [-box_halfwidth, box_halfwidth]
/// with grid_n points per axis. The box should cover at least ~6 standard
/// deviations of the Gaussian part.
double brute_force_integral(const GaussPolyWigner& w, double box_halfwidth,
                            int grid_n, par::Exec exec = par::Exec::seq);

}  // namespace qndi::wigner
