// Command-line front end: deterministic self-checks, the three figure
// sweeps (window width, coupling, matter noise), and JSON dumps of the
// underlying matrices and states.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "qndi/errors.hpp"
#include "qndi/metrics.hpp"
#include "qndi/par.hpp"
#include "qndi/phase_space.hpp"
#include "qndi/protocols.hpp"
#include "qndi/serialize.hpp"
#include "qndi/sweep.hpp"
#include "qndi/version.hpp"

namespace {

using nlohmann::json;
using namespace qndi;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumeric = 3;

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  return j;
}

/// Applies a config-file value unless the flag was given on the command line
/// (flags always win).
template <typename T>
void merge(const CLI::App& cmd, const json& cfg, const std::string& flag,
           const std::string& key, T& var) {
  if (cmd.count(flag) == 0 && cfg.contains(key)) {
    try {
      var = cfg.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

struct CommonOpts {
  double kappa = 0.5;
  std::optional<double> kappa1, kappa2;
  std::string kappa3_sign = "+";
  std::optional<double> gamma_x, gamma_p;
  double vm = 0.5;
  double va = 5.0;
  int order = 32;
  int jobs = 0;
  std::string input = "single-photon";
  double input_variance = 1.0;
  std::string config_path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--kappa", kappa, "Coupling gain kappa1 = kappa2");
    cmd->add_option("--kappa1", kappa1, "Gain of the A->M coupling");
    cmd->add_option("--kappa2", kappa2, "Gain of the L->A coupling");
    cmd->add_option("--kappa3-sign", kappa3_sign,
                    "Sign branch of the all-optical gain (+ or -)")
        ->check(CLI::IsMember({"+", "-"}));
    cmd->add_option("--gamma-x", gamma_x, "Feed-forward gain into x_A");
    cmd->add_option("--gamma-p", gamma_p, "Feed-forward gain into p_A");
    cmd->add_option("--vm", vm, "Thermal variance of light mode M");
    cmd->add_option("--va", va, "Thermal variance of the matter mode");
    cmd->add_option("--order", order, "Gauss-Legendre order per window axis");
    cmd->add_option("--jobs", jobs, "OpenMP thread limit (0 = hardware)");
    cmd->add_option("--input", input, "Input state of mode L")
        ->check(CLI::IsMember({"single-photon", "vacuum", "thermal"}));
    cmd->add_option("--input-variance", input_variance,
                    "Variance for --input thermal");
    cmd->add_option("--config", config_path,
                    "JSON config file; command-line flags override it");
  }

  void merge_config(const CLI::App& cmd, const json& cfg) {
    merge(cmd, cfg, "--kappa", "kappa", kappa);
    if (cmd.count("--kappa1") == 0 && cfg.contains("kappa1"))
      kappa1 = cfg.at("kappa1").get<double>();
    if (cmd.count("--kappa2") == 0 && cfg.contains("kappa2"))
      kappa2 = cfg.at("kappa2").get<double>();
    merge(cmd, cfg, "--kappa3-sign", "kappa3_sign", kappa3_sign);
    if (cmd.count("--gamma-x") == 0 && cfg.contains("gamma_x"))
      gamma_x = cfg.at("gamma_x").get<double>();
    if (cmd.count("--gamma-p") == 0 && cfg.contains("gamma_p"))
      gamma_p = cfg.at("gamma_p").get<double>();
    merge(cmd, cfg, "--vm", "vm", vm);
    merge(cmd, cfg, "--va", "va", va);
    merge(cmd, cfg, "--order", "order", order);
    merge(cmd, cfg, "--jobs", "jobs", jobs);
    merge(cmd, cfg, "--input", "input", input);
    merge(cmd, cfg, "--input-variance", "input_variance", input_variance);
  }

  protocols::SequentialConfig sequential() const {
    protocols::SequentialConfig seq;
    seq.kappa1 = kappa1.value_or(kappa);
    seq.kappa2 = kappa2.value_or(kappa);
    seq.kappa3_sign = kappa3_sign == "+" ? protocols::Kappa3Sign::positive
                                         : protocols::Kappa3Sign::negative;
    seq.gamma_x = gamma_x;
    seq.gamma_p = gamma_p;
    return seq;
  }

  sweep::CommonParams sweep_params() const {
    sweep::CommonParams params;
    params.sequential = sequential();
    params.v_m = vm;
    params.v_a = va;
    params.quad_order = order;
    if (input == "single-photon")
      params.input.kind = sweep::InputKind::single_photon;
    else if (input == "vacuum")
      params.input.kind = sweep::InputKind::vacuum;
    else {
      params.input.kind = sweep::InputKind::thermal;
      params.input.variance = input_variance;
    }
    return params;
  }
};

struct RangeOpts {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  bool log_spaced = false;

  void add_to(CLI::App* cmd, double def_start, double def_stop,
              int def_points, bool def_log) {
    start = def_start;
    stop = def_stop;
    points = def_points;
    log_spaced = def_log;
    cmd->add_option("--start", start, "Range start");
    cmd->add_option("--stop", stop, "Range stop");
    cmd->add_option("--points", points, "Number of sweep points");
    cmd->add_flag("--log,!--linear", log_spaced,
                  "Logarithmic (or linear) spacing");
  }

  void merge_config(const CLI::App& cmd, const json& cfg) {
    merge(cmd, cfg, "--start", "start", start);
    merge(cmd, cfg, "--stop", "stop", stop);
    merge(cmd, cfg, "--points", "points", points);
    if (cmd.count("--log") == 0 && cmd.count("--linear") == 0 &&
        cfg.contains("log"))
      log_spaced = cfg.at("log").get<bool>();
  }

  sweep::Range range() const { return {start, stop, points, log_spaced}; }
};

struct OutputOpts {
  std::string out;
  std::string format = "csv";
  std::string svg_path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out", out, "Output file (default: stdout)");
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--svg", svg_path, "Also write an SVG line plot here");
  }

  void merge_config(const CLI::App& cmd, const json& cfg) {
    merge(cmd, cfg, "--out", "out", out);
    merge(cmd, cfg, "--format", "format", format);
    merge(cmd, cfg, "--svg", "svg", svg_path);
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

void emit_sweep(const sweep::SweepResult& result, const OutputOpts& output,
                const std::string& x_label, bool log_x) {
  std::ostringstream body;
  if (output.format == "csv")
    sweep::write_csv(body, result);
  else
    sweep::write_json(body, result);
  write_text(output.out, body.str());
  if (!output.svg_path.empty())
    write_text(output.svg_path, sweep::to_svg(result, x_label, log_x));
}

// ---------------------------------------------------------------------------
// verify-deterministic

struct Check {
  std::string name;
  double residual;
  double bound;
  bool pass() const { return residual < bound; }
};

int run_verify(const CommonOpts& common, unsigned seed, int trials) {
  using namespace phase_space;
  par::set_threads(common.jobs);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> weak(0.05, 1.0);
  std::uniform_real_distribution<double> gain(-2.0, 2.0);

  const protocols::SequentialConfig base_seq = common.sequential();
  if (!base_seq.is_ideal())
    std::cerr << "warning: non-ideal gains configured; transfer identity "
                 "checks are expected to fail\n";

  Mat2x6 selector = Mat2x6::Zero();
  selector(0, quad_index(Mode::L, Quadrature::x)) = 1.0;
  selector(1, quad_index(Mode::L, Quadrature::p)) = 1.0;

  std::vector<Check> checks;

  double r_seq = 0.0, r_seq_comm = 0.0, r_chain = 0.0;
  for (int t = 0; t < trials; ++t) {
    protocols::SequentialConfig seq = base_seq;
    seq.kappa1 = weak(rng);
    seq.kappa2 = weak(rng);
    const auto map = protocols::deterministic_sequential_map(seq);
    r_seq = std::max(r_seq,
                     (map.matrix() - selector).cwiseAbs().maxCoeff());
    r_seq_comm = std::max(r_seq_comm, map.commutator_residual());
    r_chain = std::max(
        r_chain, protocols::sequential_chain(seq).symplectic_residual());
  }
  checks.push_back({"sequential transfer identity", r_seq, 1e-12});
  checks.push_back({"sequential output commutator", r_seq_comm, 1e-12});

  double r_joint = 0.0, r_joint_comm = 0.0;
  for (int t = 0; t < trials; ++t) {
    protocols::JointConfig jc;
    jc.kappa = weak(rng);
    jc.gamma_x = common.gamma_x;
    jc.gamma_p = common.gamma_p;
    const auto map = protocols::deterministic_joint_map(jc);
    r_joint = std::max(r_joint,
                       (map.matrix() - selector).cwiseAbs().maxCoeff());
    r_joint_comm = std::max(r_joint_comm, map.commutator_residual());
    r_chain = std::max(r_chain,
                       protocols::joint_chain(jc).symplectic_residual());
  }
  checks.push_back({"joint transfer identity", r_joint, 1e-12});
  checks.push_back({"joint output commutator", r_joint_comm, 1e-12});

  double r_gate = 0.0;
  const Mode modes[3] = {Mode::L, Mode::M, Mode::A};
  for (int t = 0; t < 1000; ++t) {
    const Mode a = modes[rng() % 3];
    Mode b = modes[rng() % 3];
    while (b == a) b = modes[rng() % 3];
    double g = gain(rng);
    r_gate = std::max(r_gate, qnd_gate(a, b, g).symplectic_residual());
    r_gate = std::max(r_gate, joint_qnd_gate(g).symplectic_residual());
    if (g == 0.0) g = 0.5;
    r_gate = std::max(r_gate, squeeze_gate(a, g).symplectic_residual());
    r_gate = std::max(r_gate, balanced_bs_gate(a, b).symplectic_residual());
  }
  checks.push_back({"elementary gate symplectic form", r_gate, 1e-12});
  checks.push_back({"composed chain symplectic form", r_chain, 1e-12});

  if (base_seq.is_ideal()) {
    double r_fix = 0.0;
    for (int t = 0; t < trials; ++t) {
      protocols::SequentialConfig seq = base_seq;
      seq.kappa1 = weak(rng);
      seq.kappa2 = weak(rng);
      Mat6 parity = Mat6::Identity();
      parity(0, 0) = -1.0;
      parity(1, 1) = -1.0;
      const Mat6 composed =
          parity * protocols::sequential_pullback(seq).matrix();
      const Mat6 fixture =
          reference_pullback_matrix(seq.kappa1, seq.kappa2).matrix();
      r_fix = std::max(r_fix, (composed - fixture).cwiseAbs().maxCoeff());
      r_fix = std::max(
          r_fix, reference_pullback_matrix(seq.kappa1, seq.kappa2)
                     .symplectic_residual());
    }
    checks.push_back({"closed-form pullback fixture", r_fix, 1e-12});
  }

  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass();
    std::printf("[%s] %-36s max residual %.3e (bound %.0e)\n",
                c.pass() ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                c.bound);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// dump

int run_dump(const CommonOpts& common, const std::string& matrix_kind,
             const std::string& map_kind, const std::string& state_kind,
             double variance, const std::string& out_path) {
  json out = json::object();
  if (!matrix_kind.empty()) {
    phase_space::SymplecticMatrix m;
    if (matrix_kind == "sequential")
      m = protocols::sequential_chain(common.sequential());
    else if (matrix_kind == "joint") {
      protocols::JointConfig jc;
      jc.kappa = common.kappa1.value_or(common.kappa);
      m = protocols::joint_chain(jc);
    } else if (matrix_kind == "pullback")
      m = protocols::sequential_pullback(common.sequential());
    else if (matrix_kind == "reference-u")
      m = phase_space::reference_pullback_matrix(
          common.kappa1.value_or(common.kappa),
          common.kappa2.value_or(common.kappa));
    else
      throw ConfigError("dump: unknown matrix kind '" + matrix_kind + "'");
    out["matrix"] = serialize::matrix_to_json(m);
    out["matrix"]["kind"] = matrix_kind;
  }
  if (!map_kind.empty()) {
    phase_space::ConditionalAffineMap m = [&] {
      if (map_kind == "sequential")
        return protocols::deterministic_sequential_map(common.sequential());
      if (map_kind == "joint") {
        protocols::JointConfig jc;
        jc.kappa = common.kappa1.value_or(common.kappa);
        jc.gamma_x = common.gamma_x;
        jc.gamma_p = common.gamma_p;
        return protocols::deterministic_joint_map(jc);
      }
      throw ConfigError("dump: unknown map kind '" + map_kind + "'");
    }();
    out["map"] = serialize::map_to_json(m);
    out["map"]["kind"] = map_kind;
  }
  if (!state_kind.empty()) {
    wigner::GaussPolyWigner w = [&] {
      if (state_kind == "single-photon")
        return wigner::GaussPolyWigner::single_photon();
      if (state_kind == "vacuum") return wigner::GaussPolyWigner::vacuum();
      if (state_kind == "thermal")
        return wigner::GaussPolyWigner::thermal(variance);
      throw ConfigError("dump: unknown state kind '" + state_kind + "'");
    }();
    out["state"] = serialize::state_to_json(w);
    out["state"]["kind"] = state_kind;
  }
  if (out.empty())
    throw ConfigError(
        "dump: nothing selected (use --matrix, --map or --state)");
  write_text(out_path, out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space simulator for QND-coupling light-matter "
               "interfaces: deterministic transfer verification and "
               "post-selected transfer sweeps"};
  app.set_version_flag("--version", std::string("qndi ") + kEngineVersion);
  app.require_subcommand(1);

  // verify-deterministic
  auto* verify = app.add_subcommand(
      "verify-deterministic",
      "Run the exact transfer-identity and symplectic-form checks");
  CommonOpts verify_common;
  verify_common.add_to(verify);
  unsigned seed = 12345;
  int trials = 100;
  verify->add_option("--seed", seed, "Seed for the random-gain suite");
  verify->add_option("--trials", trials, "Random gain pairs per check")
      ->check(CLI::PositiveNumber);

  // sweep-q
  auto* sq = app.add_subcommand(
      "sweep-q", "PS, fidelity and negativity against window half-width Q");
  CommonOpts sq_common;
  RangeOpts sq_range;
  OutputOpts sq_out;
  sq_common.add_to(sq);
  sq_range.add_to(sq, 1e-3, 2.0, 40, true);
  sq_out.add_to(sq);
  double sq_single_q = 0.0;
  sq->add_option("--q", sq_single_q,
                 "Evaluate a single window width instead of a range");

  // sweep-kappa
  auto* sk = app.add_subcommand(
      "sweep-kappa",
      "Fidelity and negativity against kappa at fixed success probability");
  CommonOpts sk_common;
  RangeOpts sk_range;
  OutputOpts sk_out;
  sk_common.add_to(sk);
  sk_range.add_to(sk, 0.1, 1.0, 10, false);
  sk_out.add_to(sk);
  double sk_target = 1e-2;
  sk->add_option("--ps-target", sk_target, "Success probability to hold");

  // sweep-va
  auto* sv = app.add_subcommand(
      "sweep-va",
      "Fidelity and negativity against matter noise V_A at fixed success "
      "probability");
  CommonOpts sv_common;
  RangeOpts sv_range;
  OutputOpts sv_out;
  sv_common.add_to(sv);
  sv_range.add_to(sv, 1.0, 10.0, 10, false);
  sv_out.add_to(sv);
  double sv_target = 1e-2;
  sv->add_option("--ps-target", sv_target, "Success probability to hold");

  // dump
  auto* dump = app.add_subcommand(
      "dump", "Write matrices, conditional maps or states as JSON");
  CommonOpts dump_common;
  dump_common.add_to(dump);
  std::string dump_matrix, dump_map, dump_state, dump_out;
  double dump_variance = 1.0;
  dump->add_option("--matrix,--dump-matrix", dump_matrix,
                   "sequential | joint | pullback | reference-u");
  dump->add_option("--map,--dump-map", dump_map, "sequential | joint");
  dump->add_option("--state,--dump-state", dump_state,
                   "single-photon | vacuum | thermal");
  dump->add_option("--variance", dump_variance, "Variance for --state thermal");
  dump->add_option("--out", dump_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (verify->parsed()) {
      if (!verify_common.config_path.empty()) {
        const json cfg = load_config_file(verify_common.config_path);
        verify_common.merge_config(*verify, cfg);
        merge(*verify, cfg, "--seed", "seed", seed);
        merge(*verify, cfg, "--trials", "trials", trials);
      }
      return run_verify(verify_common, seed, trials);
    }

    auto run_one_sweep = [&](CLI::App* cmd, CommonOpts& common,
                             RangeOpts& range, OutputOpts& output,
                             auto&& runner, const std::string& x_label,
                             double* target) {
      if (!common.config_path.empty()) {
        const json cfg = load_config_file(common.config_path);
        common.merge_config(*cmd, cfg);
        range.merge_config(*cmd, cfg);
        output.merge_config(*cmd, cfg);
        if (target != nullptr)
          merge(*cmd, cfg, "--ps-target", "ps_target", *target);
      }
      par::set_threads(common.jobs);
      sweep::CommonParams params = common.sweep_params();
      params.sequential.validate();
      if (!(params.v_m >= 0.5) || !(params.v_a >= 0.5))
        throw ConfigError("thermal variances must be >= 1/2");
      const sweep::SweepResult result = runner(params, range.range());
      const bool log_x = range.log_spaced;
      emit_sweep(result, output, x_label, log_x);
      return kExitOk;
    };

    if (sq->parsed()) {
      if (sq->count("--q") > 0) {
        sq_range.start = sq_single_q;
        sq_range.stop = sq_single_q;
        sq_range.points = 1;
      }
      return run_one_sweep(
          sq, sq_common, sq_range, sq_out,
          [&](const sweep::CommonParams& p, const sweep::Range& r) {
            if (!(r.start > 0.0) || !(r.stop <= 20.0))
              throw ConfigError("sweep-q: Q range must lie in (0, 20]");
            return sweep::sweep_q(p, r);
          },
          "Q", nullptr);
    }
    if (sk->parsed()) {
      return run_one_sweep(
          sk, sk_common, sk_range, sk_out,
          [&](const sweep::CommonParams& p, const sweep::Range& r) {
            return sweep::sweep_kappa(p, r, sk_target);
          },
          "kappa", &sk_target);
    }
    if (sv->parsed()) {
      return run_one_sweep(
          sv, sv_common, sv_range, sv_out,
          [&](const sweep::CommonParams& p, const sweep::Range& r) {
            return sweep::sweep_va(p, r, sv_target);
          },
          "V_A", &sv_target);
    }
    if (dump->parsed()) {
      if (!dump_common.config_path.empty()) {
        const json cfg = load_config_file(dump_common.config_path);
        dump_common.merge_config(*dump, cfg);
      }
      return run_dump(dump_common, dump_matrix, dump_map, dump_state,
                      dump_variance, dump_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitBadConfig;
}
