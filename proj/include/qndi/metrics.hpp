#pragma once

#include <functional>
#include <string>

#include "qndi/par.hpp"
#include "qndi/protocols.hpp"
#include "qndi/wigner.hpp"

namespace qndi::metrics {

/// Scalar figures of merit of one post-selected transfer.
struct MeritReport {
  double q = 0.0;
  double ps = 0.0;
  double fidelity = 0.0;
  double negativity = 0.0;

  /// Sanity bounds: fidelity <= 1 + 1e-6 and ps in (0, 1 + 1e-6].
  void validate() const;

  /// CSV row in the order q,ps,fidelity,negativity (no header, no newline).
  std::string csv_row() const;
};

/// Overlap fidelity F = 2 pi * integral of W_out * W_ref, with W_out the
/// normalized post-selected output. For a pure reference this is the state
/// fidelity.
double fidelity(const protocols::ProbabilisticResult& out,
                const wigner::GaussPolyWigner& reference,
                par::Exec exec = par::Exec::omp);

/// Same overlap figure for a plain state (no pipeline).
double fidelity_direct(const wigner::GaussPolyWigner& w,
                       const wigner::GaussPolyWigner& reference);

/// Coarse-grid plus coordinate-descent minimizer specification.
struct NegativitySearch {
  double half_extent = 4.0;  ///< search box [-h, h]^2
  int grid = 81;             ///< coarse grid points per axis
  double step_tol = 1e-6;    ///< refinement terminates below this step
};

/// Minimum of the normalized output distribution over the search box.
/// Negative values witness nonclassicality; a positive minimum is a valid
/// result for classical outputs.
double negativity(const protocols::ProbabilisticResult& out,
                  const NegativitySearch& search = {},
                  par::Exec exec = par::Exec::omp);

/// Grid + coordinate-descent minimum of an arbitrary function of (x, p).
/// Returns {minimum value, argmin}.
std::pair<double, std::array<double, 2>> minimize_on_plane(
    const std::function<double(double, double)>& f,
    const NegativitySearch& search, par::Exec exec = par::Exec::omp);

struct InvertOptions {
  double q_min = 1e-6;
  double q_max = 20.0;
  double rel_tol = 1e-4;  ///< relative tolerance on PS
  int max_iter = 200;
  int quad_order = 32;
  bool adaptive = true;
};

/// Window half-width Q at which the pipeline reaches the target success
/// probability, found by bisection on the monotone map Q -> PS(Q).
/// Throws UnreachableTargetError when the target lies outside
/// [PS(q_min), PS(q_max)].
double invert_ps(const protocols::ProbabilisticPipeline& pipeline,
                 double target_ps, const InvertOptions& opts = {},
                 par::Exec exec = par::Exec::omp);

/// Bisection core on a monotone increasing function ps(q).
double invert_monotone(const std::function<double(double)>& ps_of_q,
                       double target, double q_min, double q_max,
                       double rel_tol, int max_iter);

}  // namespace qndi::metrics
