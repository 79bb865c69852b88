#include "qndi/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "qndi/errors.hpp"
#include "qndi/svg.hpp"
#include "qndi/version.hpp"

namespace qndi::sweep {

using nlohmann::json;

wigner::GaussPolyWigner InputSpec::make() const {
  switch (kind) {
    case InputKind::single_photon:
      return wigner::GaussPolyWigner::single_photon();
    case InputKind::vacuum:
      return wigner::GaussPolyWigner::vacuum();
    case InputKind::thermal:
      return wigner::GaussPolyWigner::thermal(variance);
  }
  throw ConfigError("InputSpec: unknown input kind");
}

std::string InputSpec::name() const {
  switch (kind) {
    case InputKind::single_photon:
      return "single-photon";
    case InputKind::vacuum:
      return "vacuum";
    case InputKind::thermal:
      return "thermal";
  }
  return "?";
}

void Range::validate() const {
  if (points < 1) throw ConfigError("range: needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw ConfigError("range: bounds must be finite");
  if (points > 1 && !(start < stop))
    throw ConfigError("range: start must be below stop");
  if (log_spaced && !(start > 0.0))
    throw ConfigError("range: log spacing needs positive bounds");
}

std::vector<double> Range::values() const {
  validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    if (log_spaced)
      out.push_back(start * std::pow(stop / start, f));
    else
      out.push_back(start + (stop - start) * f);
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json seq_to_json(const protocols::SequentialConfig& c) {
  json j{{"kappa1", c.kappa1},
         {"kappa2", c.kappa2},
         {"kappa3_sign",
          c.kappa3_sign == protocols::Kappa3Sign::positive ? "+" : "-"}};
  if (c.kappa3) j["kappa3"] = *c.kappa3;
  if (c.squeeze_gain) j["squeeze_gain"] = *c.squeeze_gain;
  if (c.gamma_x) j["gamma_x"] = *c.gamma_x;
  if (c.gamma_p) j["gamma_p"] = *c.gamma_p;
  return j;
}

/// Runs body(i) for every record index, catching per-point numeric failures
/// into the record instead of aborting the sweep.
template <typename Body>
std::vector<Record> run_points(const std::vector<double>& values, Body&& body) {
  std::vector<Record> records(values.size());
  par::for_index(
      static_cast<std::int64_t>(values.size()),
      [&](std::int64_t i) {
        const auto ui = static_cast<std::size_t>(i);
        records[ui].swept = values[ui];
        try {
          body(records[ui]);
        } catch (const NumericError& e) {
          records[ui].error = e.what();
        }
      },
      par::Exec::omp);
  for (const auto& r : records)
    if (r.error)
      std::cerr << "warning: point swept=" << fmt_double(r.swept)
                << " failed: " << *r.error << "\n";
  return records;
}

Metadata make_metadata(const CommonParams& params, const std::string& command,
                       json extra, double wall_seconds) {
  Metadata meta;
  meta.engine_version = kEngineVersion;
  meta.command = command;
  meta.quad_order = params.quad_order;
  meta.wall_seconds = wall_seconds;
  meta.config_echo = params_to_json(params);
  meta.config_echo.update(extra);
  return meta;
}

}  // namespace

json params_to_json(const CommonParams& params) {
  json j{{"sequential", seq_to_json(params.sequential)},
         {"v_m", params.v_m},
         {"v_a", params.v_a},
         {"quad_order", params.quad_order},
         {"adaptive", params.adaptive},
         {"input", params.input.name()}};
  if (params.input.kind == InputKind::thermal)
    j["input_variance"] = params.input.variance;
  return j;
}

SweepResult sweep_q(const CommonParams& params, const Range& q_range) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto input = params.input.make();
  const protocols::ProbabilisticPipeline pipeline(input, params.sequential,
                                                  params.v_m, params.v_a);
  auto records = run_points(q_range.values(), [&](Record& r) {
    const auto out =
        pipeline.run(r.swept, params.quad_order, params.adaptive);
    r.q = r.swept;
    r.ps = out.ps;
    if (!(out.ps > 0.0)) throw NumericError("success probability underflow");
    r.fidelity = metrics::fidelity(out, input);
    r.negativity = metrics::negativity(out, params.negativity);
  });
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json extra{{"swept", "q"},
             {"range", {{"start", q_range.start},
                        {"stop", q_range.stop},
                        {"points", q_range.points},
                        {"log", q_range.log_spaced}}}};
  return SweepResult{std::move(records),
                     make_metadata(params, "sweep-q", extra, wall)};
}

namespace {

SweepResult sweep_at_fixed_ps(const CommonParams& base, const Range& range,
                              double target_ps,
                              const metrics::InvertOptions& invert,
                              const std::string& command,
                              const std::string& swept_name) {
  if (!(target_ps > 0.0) || !(target_ps < 1.0))
    throw ConfigError("sweep: target PS must lie in (0, 1)");
  const auto t0 = std::chrono::steady_clock::now();
  const auto input = base.input.make();
  auto records = run_points(range.values(), [&](Record& r) {
    CommonParams params = base;
    if (swept_name == "kappa") {
      params.sequential.kappa1 = r.swept;
      params.sequential.kappa2 = r.swept;
    } else {
      params.v_a = r.swept;
    }
    const protocols::ProbabilisticPipeline pipeline(input, params.sequential,
                                                    params.v_m, params.v_a);
    metrics::InvertOptions opts = invert;
    opts.quad_order = params.quad_order;
    opts.adaptive = params.adaptive;
    const double q = metrics::invert_ps(pipeline, target_ps, opts);
    const auto out = pipeline.run(q, params.quad_order, params.adaptive);
    r.q = q;
    r.ps = out.ps;
    r.fidelity = metrics::fidelity(out, input);
    r.negativity = metrics::negativity(out, params.negativity);
  });
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json extra{{"swept", swept_name},
             {"target_ps", target_ps},
             {"range", {{"start", range.start},
                        {"stop", range.stop},
                        {"points", range.points},
                        {"log", range.log_spaced}}}};
  return SweepResult{std::move(records),
                     make_metadata(base, command, extra, wall)};
}

}  // namespace

SweepResult sweep_kappa(const CommonParams& params, const Range& kappa_range,
                        double target_ps,
                        const metrics::InvertOptions& invert) {
  if (!(kappa_range.start > 0.0))
    throw ConfigError("sweep-kappa: kappa must be positive");
  return sweep_at_fixed_ps(params, kappa_range, target_ps, invert,
                           "sweep-kappa", "kappa");
}

SweepResult sweep_va(const CommonParams& params, const Range& va_range,
                     double target_ps, const metrics::InvertOptions& invert) {
  if (!(va_range.start >= 0.5))
    throw ConfigError("sweep-va: V_A must be >= 1/2");
  return sweep_at_fixed_ps(params, va_range, target_ps, invert, "sweep-va",
                           "va");
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "# engine=qndi " << result.metadata.engine_version << "\n";
  out << "# command=" << result.metadata.command << "\n";
  out << "# quadrature_order=" << result.metadata.quad_order << "\n";
  out << "# config=" << result.metadata.config_echo.dump() << "\n";
  out << "swept,q,ps,fidelity,negativity\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
  };
  for (const auto& r : result.records)
    out << fmt_double(r.swept) << "," << cell(r.q) << "," << cell(r.ps) << ","
        << cell(r.fidelity) << "," << cell(r.negativity) << "\n";
}

void write_json(std::ostream& out, const SweepResult& result) {
  json records = json::array();
  for (const auto& r : result.records) {
    json jr{{"swept", r.swept}};
    jr["q"] = r.q ? json(*r.q) : json();
    jr["ps"] = r.ps ? json(*r.ps) : json();
    jr["fidelity"] = r.fidelity ? json(*r.fidelity) : json();
    jr["negativity"] = r.negativity ? json(*r.negativity) : json();
    if (r.error) jr["error"] = *r.error;
    records.push_back(jr);
  }
  json j{{"metadata",
          {{"engine_version", result.metadata.engine_version},
           {"command", result.metadata.command},
           {"quadrature_order", result.metadata.quad_order},
           {"wall_seconds", result.metadata.wall_seconds},
           {"config", result.metadata.config_echo}}},
         {"records", records}};
  out << j.dump(2) << "\n";
}

std::string to_svg(const SweepResult& result, const std::string& x_label,
                   bool log_x) {
  svg::Series f{"fidelity", "#1f77b4", {}};
  svg::Series n{"negativity", "#d62728", {}};
  svg::Series p{"ps", "#2ca02c", {}};
  const double nan = std::nan("");
  for (const auto& r : result.records) {
    f.points.emplace_back(r.swept, r.fidelity ? *r.fidelity : nan);
    n.points.emplace_back(r.swept, r.negativity ? *r.negativity : nan);
    p.points.emplace_back(r.swept, r.ps ? *r.ps : nan);
  }
  svg::PlotOptions opt;
  opt.x_label = x_label;
  opt.log_x = log_x;
  opt.title = result.metadata.command;
  return svg::render_line_chart({f, n, p}, opt);
}

}  // namespace qndi::sweep
