#include "qndi/protocols.hpp"

#include <cmath>

#include "qndi/errors.hpp"

namespace qndi::protocols {

using phase_space::ConditionalAffineMap;
using phase_space::Mode;
using phase_space::Quadrature;
using phase_space::QuadratureIndex;
using phase_space::SymplecticMatrix;

double SequentialConfig::kappa3_value() const {
  if (kappa3) return *kappa3;
  const double sign = kappa3_sign == Kappa3Sign::positive ? 1.0 : -1.0;
  return sign / (kappa1 * kappa2);
}

double SequentialConfig::squeeze_value() const {
  return squeeze_gain.value_or(kappa2);
}

bool SequentialConfig::is_ideal() const {
  return !kappa3 && !squeeze_gain && !gamma_x && !gamma_p &&
         kappa3_sign == Kappa3Sign::positive;
}

void SequentialConfig::validate() const {
  if (!(kappa1 > 0.0) || !std::isfinite(kappa1))
    throw ConfigError("sequential: kappa1 must be in (0, inf)");
  if (!(kappa2 > 0.0) || !std::isfinite(kappa2))
    throw ConfigError("sequential: kappa2 must be in (0, inf)");
  if (squeeze_value() == 0.0)
    throw ConfigError("sequential: squeeze gain must be nonzero");
  if (!std::isfinite(kappa3_value()) || !std::isfinite(squeeze_value()) ||
      !std::isfinite(gamma_x_value()) || !std::isfinite(gamma_p_value()))
    throw ConfigError("sequential: gains must be finite");
}

double JointConfig::squeeze_value() const {
  return squeeze_gain.value_or(std::sqrt(2.0) / kappa);
}

bool JointConfig::is_ideal() const {
  return preprocess && !squeeze_gain && !gamma_x && !gamma_p;
}

void JointConfig::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ConfigError("joint: kappa must be in (0, inf)");
  if (squeeze_value() == 0.0)
    throw ConfigError("joint: squeeze gain must be nonzero");
  if (!std::isfinite(gamma_x_value()) || !std::isfinite(gamma_p_value()))
    throw ConfigError("joint: gains must be finite");
}

void ProbabilisticConfig::validate() const {
  sequential.validate();
  if (!(v_m >= 0.5)) throw ConfigError("probabilistic: V_M must be >= 1/2");
  if (!(v_a >= 0.5)) throw ConfigError("probabilistic: V_A must be >= 1/2");
  if (!(q > 0.0)) throw ConfigError("probabilistic: Q must be positive");
  if (quad_order < 2)
    throw ConfigError("probabilistic: quadrature order must be >= 2");
}

SymplecticMatrix sequential_chain(const SequentialConfig& cfg) {
  cfg.validate();
  return phase_space::compose({
      phase_space::squeeze_gate(Mode::L, cfg.squeeze_value()),
      phase_space::qnd_gate(Mode::M, Mode::L, cfg.kappa3_value()),
      phase_space::qnd_gate(Mode::A, Mode::M, cfg.kappa1),
      phase_space::qnd_gate(Mode::L, Mode::A, cfg.kappa2),
  });
}

SymplecticMatrix sequential_pullback(const SequentialConfig& cfg) {
  return sequential_chain(cfg).inverse();
}

SymplecticMatrix joint_chain(const JointConfig& cfg) {
  cfg.validate();
  std::vector<SymplecticMatrix> gates;
  if (cfg.preprocess) {
    const double g = cfg.squeeze_value();
    gates.push_back(phase_space::balanced_bs_gate(Mode::M, Mode::L));
    gates.push_back(phase_space::squeeze_gate(Mode::L, g));
    gates.push_back(phase_space::squeeze_gate(Mode::M, 1.0 / g));
  }
  gates.push_back(phase_space::joint_qnd_gate(cfg.kappa));
  return phase_space::compose(gates);
}

ConditionalAffineMap deterministic_sequential_map(const SequentialConfig& cfg) {
  const SymplecticMatrix u = sequential_chain(cfg);
  return phase_space::conditional_map(
      u, QuadratureIndex{Mode::M, Quadrature::x},
      QuadratureIndex{Mode::L, Quadrature::p}, cfg.gamma_x_value(),
      cfg.gamma_p_value());
}

ConditionalAffineMap deterministic_joint_map(const JointConfig& cfg) {
  const SymplecticMatrix u = joint_chain(cfg);
  return phase_space::conditional_map(
      u, QuadratureIndex{Mode::L, Quadrature::x},
      QuadratureIndex{Mode::M, Quadrature::p}, cfg.gamma_x_value(),
      cfg.gamma_p_value());
}

std::pair<double, double> single_qnd_reference(double kappa) {
  if (!std::isfinite(kappa))
    throw ConfigError("single_qnd_reference: kappa must be finite");
  const double k2 = kappa * kappa;
  const double eta = k2 / (1.0 + k2);
  return {eta, k2 / ((1.0 + k2) * (1.0 + k2))};
}

double ProbabilisticResult::evaluate(double x_a, double p_a) const {
  if (ps <= 0.0)
    throw NumericError(
        "ProbabilisticResult: zero success probability, output undefined");
  const std::array<double, 2> pt{x_a, p_a};
  return slices.weighted_evaluate(pt) / ps;
}

ProbabilisticPipeline::ProbabilisticPipeline(
    const wigner::GaussPolyWigner& input_l, const SequentialConfig& seq,
    double v_m, double v_a)
    : forward_(sequential_chain(seq)),
      pullback_(forward_.inverse()),
      reduced_(wigner::GaussPolyWigner::vacuum()) {
  if (input_l.dim() != 2)
    throw ConfigError("probabilistic: input state must be single-mode");
  const double norm = wigner::total_integral(input_l);
  if (std::abs(norm - 1.0) > 1e-8)
    throw ConfigError("probabilistic: input state must be normalized");
  if (!(v_m >= 0.5) || !(v_a >= 0.5))
    throw ConfigError("probabilistic: thermal variances must be >= 1/2");

  const auto w_in = wigner::product_embed(
      {{input_l, Mode::L},
       {wigner::GaussPolyWigner::thermal(v_m), Mode::M},
       {wigner::GaussPolyWigner::thermal(v_a), Mode::A}});
  const auto w6 = wigner::substitute_linear(w_in, pullback_);
  // Integrate the unmeasured light quadratures x_L and p_M over the full
  // line; the reduction lives on (p_L, x_M, x_A, p_A).
  const std::array<int, 2> drop{
      phase_space::quad_index(Mode::L, Quadrature::x),
      phase_space::quad_index(Mode::M, Quadrature::p)};
  reduced_ = wigner::marginalize_full(w6, drop);
}

double ProbabilisticPipeline::ps(double q, int order, par::Exec exec) const {
  return wigner::window_reduce(reduced_, 0, 1, q, order)
      .weighted_total(exec);
}

ProbabilisticResult ProbabilisticPipeline::run(double q, int order,
                                               bool adaptive,
                                               par::Exec exec) const {
  if (!(q > 0.0)) throw ConfigError("probabilistic: Q must be positive");
  if (order < 2) throw ConfigError("probabilistic: order must be >= 2");
  auto slices = wigner::window_reduce(reduced_, 0, 1, q, order);
  double total = slices.weighted_total(exec);
  if (adaptive) {
    while (order < kMaxOrder) {
      auto refined = wigner::window_reduce(reduced_, 0, 1, q, order * 2);
      const double refined_total = refined.weighted_total(exec);
      const double diff = std::abs(refined_total - total);
      const bool converged =
          diff <= kSelfTol * std::max(std::abs(refined_total), kPsUnderflow);
      order *= 2;
      slices = std::move(refined);
      total = refined_total;
      if (converged) break;
    }
  }
  ProbabilisticResult result{std::move(slices), total, order};
  if (!(total > kPsUnderflow)) result.ps = 0.0;
  return result;
}

ProbabilisticResult probabilistic_output(const wigner::GaussPolyWigner& input_l,
                                         const ProbabilisticConfig& cfg) {
  cfg.validate();
  const ProbabilisticPipeline pipeline(input_l, cfg.sequential, cfg.v_m,
                                       cfg.v_a);
  return pipeline.run(cfg.q, cfg.quad_order, cfg.adaptive);
}

}  // namespace qndi::protocols
