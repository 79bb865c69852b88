#pragma once

#include <optional>
#include <utility>

#include "qndi/par.hpp"
#include "qndi/phase_space.hpp"
#include "qndi/wigner.hpp"

namespace qndi::protocols {

/// Sign branch of the default all-optical coupling gain kappa3. The positive
/// branch is the one for which the deterministic transfer identity holds and
/// is the default everywhere; the negative branch is kept selectable because
/// both sign conventions circulate for this chain.
enum class Kappa3Sign { positive, negative };

/// Sequential scheme: squeeze L, couple M->L all-optically, then couple the
/// light modes to the matter mode one after the other (A->M with kappa1,
/// L->A with kappa2), measure x_M and p_L, displace mode A.
struct SequentialConfig {
  double kappa1 = 0.5;
  double kappa2 = 0.5;
  Kappa3Sign kappa3_sign = Kappa3Sign::positive;
  /// Overrides for the ideal values; mainly for studying degraded setups.
  std::optional<double> kappa3;        // default: sign / (kappa1*kappa2)
  std::optional<double> squeeze_gain;  // default: kappa2
  std::optional<double> gamma_x;       // default: -1/kappa1
  std::optional<double> gamma_p;       // default:  1/kappa2

  double kappa3_value() const;
  double squeeze_value() const;
  double gamma_x_value() const { return gamma_x.value_or(-1.0 / kappa1); }
  double gamma_p_value() const { return gamma_p.value_or(1.0 / kappa2); }

  /// True when all gains sit at their ideal (perfect-transfer) relations.
  bool is_ideal() const;
  void validate() const;
};

/// Joint scheme: balanced beam splitter on (M, L), reciprocal squeezers, one
/// simultaneous three-mode coupling, measurement of x_L and p_M, displacement
/// of mode A.
struct JointConfig {
  double kappa = 0.5;
  bool preprocess = true;
  std::optional<double> squeeze_gain;  // default: sqrt(2)/kappa (on L; M gets 1/g)
  std::optional<double> gamma_x;       // default: -1/kappa
  std::optional<double> gamma_p;       // default:  1/kappa

  double squeeze_value() const;
  double gamma_x_value() const { return gamma_x.value_or(-1.0 / kappa); }
  double gamma_p_value() const { return gamma_p.value_or(1.0 / kappa); }

  bool is_ideal() const;
  void validate() const;
};

/// Post-selected variant of the sequential scheme.
struct ProbabilisticConfig {
  SequentialConfig sequential;
  double v_m = 0.5;     ///< initial thermal variance of light mode M
  double v_a = 5.0;     ///< initial thermal variance of the matter mode
  double q = 0.1;       ///< post-selection window half-width
  int quad_order = 32;  ///< Gauss-Legendre order per window axis
  bool adaptive = true; ///< double the order until self-converged

  void validate() const;
};

/// Forward Heisenberg map of the full pre-processed sequential chain
/// (squeeze on L, then QND M->L, A->M, L->A applied in that order).
phase_space::SymplecticMatrix sequential_chain(const SequentialConfig& cfg);

/// Inverse of the forward chain: maps measured-frame variables back to
/// input-frame variables; this is the matrix the state-space pipeline
/// substitutes into the joint input distribution.
phase_space::SymplecticMatrix sequential_pullback(const SequentialConfig& cfg);

/// Forward Heisenberg map of the joint chain (beam splitter + squeezers when
/// cfg.preprocess, then the simultaneous three-mode coupling).
phase_space::SymplecticMatrix joint_chain(const JointConfig& cfg);

/// Matter-mode output map of the sequential scheme with feed-forward.
/// With ideal gains the result selects (x_L, p_L) exactly: perfect transfer.
phase_space::ConditionalAffineMap deterministic_sequential_map(
    const SequentialConfig& cfg);

/// Matter-mode output map of the joint scheme with feed-forward.
/// With ideal gains and pre-processing the result selects (x_L, p_L).
phase_space::ConditionalAffineMap deterministic_joint_map(
    const JointConfig& cfg);

/// Transmission figures of the single-coupling interface used as a baseline:
/// eta = kappa^2/(1+kappa^2) and, with the extra squeezing-compensation pass,
/// eta' = kappa^2/(1+kappa^2)^2.
std::pair<double, double> single_qnd_reference(double kappa);

/// Values below this are reported as zero success probability.
inline constexpr double kPsUnderflow = 1e-300;

/// Post-selected output: weighted window slices over (x_A, p_A) before
/// normalization, plus the success probability. evaluate() returns the
/// normalized output distribution.
struct ProbabilisticResult {
  wigner::WindowSlices slices;
  double ps = 0.0;
  int order_used = 0;

  double evaluate(double x_a, double p_a) const;
};

/// The Q-independent part of the post-selected pipeline: joint input state,
/// pullback substitution, and analytic integration of the unmeasured light
/// quadratures (x_L and p_M). Kept separate so that sweeps and root finding
/// can evaluate many window widths against one reduction.
///
/// The reduced state lives on (p_L, x_M, x_A, p_A) in that order; the window
/// applies to the first two.
class ProbabilisticPipeline {
 public:
  ProbabilisticPipeline(const wigner::GaussPolyWigner& input_l,
                        const SequentialConfig& seq, double v_m, double v_a);

  const phase_space::SymplecticMatrix& pullback() const { return pullback_; }
  const wigner::GaussPolyWigner& reduced() const { return reduced_; }

  /// Success probability for window half-width q at a fixed quadrature order.
  double ps(double q, int order, par::Exec exec = par::Exec::omp) const;

  /// Full post-selected output. With adaptive = true the quadrature order is
  /// doubled (up to kMaxOrder) until PS is self-converged to kSelfTol.
  ProbabilisticResult run(double q, int order, bool adaptive = true,
                          par::Exec exec = par::Exec::omp) const;

  static constexpr double kSelfTol = 1e-8;
  static constexpr int kMaxOrder = 256;

 private:
  phase_space::SymplecticMatrix forward_;
  phase_space::SymplecticMatrix pullback_;
  wigner::GaussPolyWigner reduced_;
};

/// One-call version of the pipeline for a single configuration.
ProbabilisticResult probabilistic_output(const wigner::GaussPolyWigner& input_l,
                                         const ProbabilisticConfig& cfg);

}  // namespace qndi::protocols
