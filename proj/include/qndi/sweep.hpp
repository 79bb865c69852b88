#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qndi/metrics.hpp"
#include "qndi/protocols.hpp"

namespace qndi::sweep {

enum class InputKind { single_photon, vacuum, thermal };

struct InputSpec {
  InputKind kind = InputKind::single_photon;
  double variance = 1.0;  ///< only used for InputKind::thermal

  wigner::GaussPolyWigner make() const;
  std::string name() const;
};

/// Inclusive parameter range with linear or logarithmic spacing.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  bool log_spaced = false;

  void validate() const;
  std::vector<double> values() const;
};

/// Parameters shared by all sweep kinds.
struct CommonParams {
  protocols::SequentialConfig sequential;
  double v_m = 0.5;
  double v_a = 5.0;
  int quad_order = 32;
  bool adaptive = true;
  InputSpec input;
  metrics::NegativitySearch negativity;
};

struct Record {
  double swept = 0.0;
  std::optional<double> q;
  std::optional<double> ps;
  std::optional<double> fidelity;
  std::optional<double> negativity;
  std::optional<std::string> error;  ///< set when the point failed
};

struct Metadata {
  std::string engine_version;
  std::string command;
  int quad_order = 0;
  double wall_seconds = 0.0;
  nlohmann::json config_echo;
};

struct SweepResult {
  std::vector<Record> records;  ///< sorted by swept value
  Metadata metadata;
};

/// PS, F, N over a window-width range at fixed couplings and noise.
SweepResult sweep_q(const CommonParams& params, const Range& q_range);

/// F, N over a range of kappa = kappa1 = kappa2, each point evaluated at the
/// window width reaching `target_ps`.
SweepResult sweep_kappa(const CommonParams& params, const Range& kappa_range,
                        double target_ps,
                        const metrics::InvertOptions& invert = {});

/// F, N over a range of the matter-mode noise V_A at fixed target PS.
SweepResult sweep_va(const CommonParams& params, const Range& va_range,
                     double target_ps,
                     const metrics::InvertOptions& invert = {});

/// Stable CSV schema: header `swept,q,ps,fidelity,negativity`, one row per
/// record, nulls as empty fields. Metadata rides in leading '#' comment
/// lines; no volatile fields, so identical runs produce identical bytes.
void write_csv(std::ostream& out, const SweepResult& result);

/// Full result including wall time (not byte-stable across runs).
void write_json(std::ostream& out, const SweepResult& result);

/// Line chart of ps/fidelity/negativity against the swept value.
std::string to_svg(const SweepResult& result, const std::string& x_label,
                   bool log_x);

nlohmann::json params_to_json(const CommonParams& params);

}  // namespace qndi::sweep
