// pottslab: verification sweeps and spatial-mixing experiments for the
// anti-ferromagnetic Potts model on bounded-degree trees.
//
// Commands:
//   verify   run a lemma verification suite, emit per-case slacks
//   oracle   dynamic program vs brute-force enumeration equivalence
//   decay    WSM/SSM discrepancy decay experiment with a rate fit
//
// Exit codes: 0 all checks pass, 1 violations found, 2 usage/configuration
// error. Identical invocations (including --seed) produce byte-identical
// output files; POTTSLAB_THREADS caps the worker count without affecting
// results.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pottslab/bounds.hpp"
#include "pottslab/experiments.hpp"
#include "pottslab/io.hpp"
#include "pottslab/report.hpp"
#include "pottslab/sweeps.hpp"
#include "pottslab/version.hpp"

namespace {

using namespace pottslab;

struct CommonOpts {
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::string format = "both";  // json|csv|both
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "RNG seed; fixes all sampled instances");
  cmd->add_option("--out-dir", c.out_dir, "directory for report files");
  cmd->add_option("--format", c.format, "json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
}

void write_outputs(const CommonOpts& common, const std::string& command,
                   const std::string& config_json, const std::string& csv_name,
                   const std::string& csv_body, const std::string& json_name,
                   const std::string& json_body) {
  namespace fs = std::filesystem;
  fs::create_directories(common.out_dir);
  std::vector<std::string> outputs;
  if (common.format != "json") {
    write_text_file((fs::path(common.out_dir) / csv_name).string(), csv_body);
    outputs.push_back(csv_name);
  }
  if (common.format != "csv") {
    write_text_file((fs::path(common.out_dir) / json_name).string(), json_body);
    outputs.push_back(json_name);
  }
  std::string output_list = "[";
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i) output_list += ',';
    output_list += '"' + json_escape(outputs[i]) + '"';
  }
  output_list += ']';
  JsonObj manifest;
  manifest.field("command", command)
      .field("config_hash", hex64(fnv1a64(config_json)))
      .field("seed", static_cast<long>(common.seed))
      .field("tool_version", kVersion)
      .field_raw("outputs", output_list);
  write_text_file((fs::path(common.out_dir) / "manifest.json").string(), manifest.str());
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
  CommonOpts common;
  std::string suite;
  int q = 3;
  int dplus1 = 0;  // 0 = per-suite default
  int d_flag = 0;
  double w = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  int points = 100000;
  int instances = 0;  // 0 = per-suite default
  int grid = 100;
};

int branching(const VerifyOpts& v, int fallback) {
  if (v.dplus1 > 0 && v.d_flag > 0)
    throw std::invalid_argument("give either --dplus1 or --d, not both");
  if (v.dplus1 > 0) return v.dplus1 - 1;
  if (v.d_flag > 0) return v.d_flag;
  return fallback;
}

const std::vector<std::string> kSuites = {
    "prob-basic", "power-bound", "useful-bound", "corollary-B", "bernoulli-opt", "beta-bound",
    "diag-norm",  "S-lower",     "lambda",       "norm-bound",  "induction-step"};

CheckReport run_suite(const std::string& suite, const VerifyOpts& v) {
  const std::vector<double> default_ws = {0.3, 0.6, 0.9};
  const std::vector<double> ws = std::isnan(v.w) ? default_ws : std::vector<double>{v.w};
  const int n = v.instances;

  if (suite == "prob-basic") {
    const std::vector<int> qs = v.q == 0 ? std::vector<int>{3, 4} : std::vector<int>{v.q};
    return sweep_marginal_bounds(qs, branching(v, 7), ws, n ? n : 500, v.common.seed);
  }
  if (suite == "power-bound") return sweep_power_bound(v.points);
  if (suite == "useful-bound" || suite == "corollary-B") {
    std::vector<int> qs;
    if (v.q == 0)
      for (int q = 3; q <= 8; ++q) qs.push_back(q);
    else
      qs.push_back(v.q);
    std::vector<double> alphas;
    if (std::isnan(v.alpha))
      for (int i = 1; i <= 10; ++i) alphas.push_back(i / 10.0);
    else
      alphas.push_back(v.alpha);
    const int d_max = branching(v, 40);
    return suite == "useful-bound" ? sweep_useful_bound(qs, d_max, alphas)
                                   : sweep_corollary_B(qs, d_max, alphas);
  }
  if (suite == "bernoulli-opt") return sweep_bernoulli(v.q ? v.q : 3, v.grid);
  if (suite == "beta-bound") return sweep_beta_bound(n ? n : 10000, 10, v.common.seed);
  if (suite == "diag-norm") return sweep_diag_norm(n ? n : 10000, 5, 6, v.common.seed);
  if (suite == "S-lower") {
    PottsParams params{v.q ? v.q : 3, std::isnan(v.w) ? 0.6 : v.w, branching(v, 6)};
    return sweep_lower_bound_S(params, n ? n : 200, v.common.seed);
  }
  if (suite == "lambda") {
    PottsParams params{v.q ? v.q : 3, 0.5, branching(v, 7)};
    const std::vector<double> alphas = std::isnan(v.alpha)
                                           ? std::vector<double>{0.25, 0.5, 0.75, 1.0}
                                           : std::vector<double>{v.alpha};
    return sweep_lambda_bounds(params, alphas, n ? n : 200, v.common.seed);
  }
  if (suite == "norm-bound") {
    PottsParams params{v.q ? v.q : 3, 0.5, branching(v, 6)};
    return sweep_norm_bound(params, ws, n ? n : 10000, v.common.seed);
  }
  if (suite == "induction-step") {
    PottsParams params{v.q ? v.q : 3, 0.5, branching(v, 29)};
    return sweep_induction_step(params);
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

int cmd_verify(const VerifyOpts& v) {
  std::vector<std::string> suites;
  if (v.suite == "all")
    suites = kSuites;
  else
    suites.push_back(v.suite);

  std::vector<CheckReport> reports;
  reports.reserve(suites.size());
  for (const auto& s : suites) reports.push_back(run_suite(s, v));

  JsonObj config;
  config.field("command", "verify")
      .field("suite", v.suite)
      .field("q", v.q)
      .field("dplus1", v.dplus1)
      .field("w", v.w)
      .field("alpha", v.alpha)
      .field("points", v.points)
      .field("instances", v.instances)
      .field("grid", v.grid)
      .field("seed", static_cast<long>(v.common.seed));
  const std::string config_json = config.str(false);

  std::vector<const CheckReport*> ptrs;
  long violations = 0;
  std::string suite_array = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    ptrs.push_back(&reports[i]);
    violations += reports[i].violations();
    if (i) suite_array += ',';
    suite_array += check_summary_json_fragment(reports[i]);
  }
  suite_array += ']';

  JsonObj summary;
  summary.field_raw("config", config_json)
      .field("tool_version", kVersion)
      .field("pass", violations == 0)
      .field("total_violations", violations)
      .field_raw("suites", suite_array);

  write_outputs(v.common, "verify", config_json, "verify_cases.csv", check_cases_csv(ptrs),
                "verify_summary.json", summary.str());
  for (const auto& r : reports)
    std::cout << (r.pass() ? "[PASS] " : "[FAIL] ") << r.name() << ": " << r.cases()
              << " cases, " << r.violations() << " violations, min slack "
              << format_double(r.cases() ? r.min_slack() : 0.0) << "\n";
  return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleOpts {
  CommonOpts common;
  int trees = 500;
  int max_vertices = 9;
  int boundaries = 10;
  int q = 0;  // 0 = {2,3,4}
  double w = std::numeric_limits<double>::quiet_NaN();
};

int cmd_oracle(const OracleOpts& o) {
  const std::vector<int> qs = o.q == 0 ? std::vector<int>{2, 3, 4} : std::vector<int>{o.q};
  const std::vector<double> ws =
      std::isnan(o.w) ? std::vector<double>{0.0, 0.1, 0.5, 0.9, 1.0} : std::vector<double>{o.w};
  CheckReport rep =
      sweep_oracle_equivalence(o.trees, o.max_vertices, o.boundaries, qs, ws, o.common.seed);

  JsonObj config;
  config.field("command", "oracle")
      .field("trees", o.trees)
      .field("max_vertices", o.max_vertices)
      .field("boundaries", o.boundaries)
      .field("q", o.q)
      .field("w", o.w)
      .field("seed", static_cast<long>(o.common.seed));
  const std::string config_json = config.str(false);

  JsonObj summary;
  summary.field_raw("config", config_json)
      .field("tool_version", kVersion)
      .field_raw("result", check_summary_json_fragment(rep));
  write_outputs(o.common, "oracle", config_json, "oracle_cases.csv", check_cases_csv({&rep}),
                "oracle_summary.json", summary.str());
  std::cout << (rep.pass() ? "[PASS] " : "[FAIL] ") << "oracle-equivalence: " << rep.cases()
            << " cases, " << rep.violations() << " violations\n";
  return rep.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// decay
// ---------------------------------------------------------------------------

struct DecayOpts {
  CommonOpts common;
  std::string mode = "wsm";
  int q = 3;
  int dplus1 = 30;
  double w = std::numeric_limits<double>::quiet_NaN();
  std::string depths = "1:40";
  int instances = 1;
  std::string strategy = "all_one_color_pair";
  std::string config_file;
};

std::vector<int> parse_depths(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("depths must be A:B");
  const int lo = std::stoi(spec.substr(0, colon));
  const int hi = std::stoi(spec.substr(colon + 1));
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad depth range: " + spec);
  std::vector<int> out;
  for (int t = lo; t <= hi; ++t) out.push_back(t);
  return out;
}

BoundaryStrategy parse_strategy(const std::string& s) {
  if (s == "all_one_color_pair") return BoundaryStrategy::kAllOneColorPair;
  if (s == "random_pair") return BoundaryStrategy::kRandomPair;
  if (s == "adversarial_search") return BoundaryStrategy::kAdversarialSearch;
  throw std::invalid_argument("unknown strategy: " + s);
}

int cmd_decay(DecayOpts d, const CLI::App* cmd) {
  // Optional config file; explicitly passed flags override its values.
  if (!d.config_file.empty()) {
    const auto doc = nlohmann::json::parse(read_text_file(d.config_file));
    const auto overridden = [&](const char* flag) { return cmd->count(flag) > 0; };
    if (doc.contains("mode") && !overridden("--mode")) d.mode = doc["mode"].get<std::string>();
    if (doc.contains("q") && !overridden("--q")) d.q = doc["q"].get<int>();
    if (doc.contains("dplus1") && !overridden("--dplus1")) d.dplus1 = doc["dplus1"].get<int>();
    if (doc.contains("w") && !overridden("--w")) d.w = doc["w"].get<double>();
    if (doc.contains("depths") && !overridden("--depths"))
      d.depths = doc["depths"].get<std::string>();
    if (doc.contains("instances_per_depth") && !overridden("--instances"))
      d.instances = doc["instances_per_depth"].get<int>();
    if (doc.contains("strategy") && !overridden("--strategy"))
      d.strategy = doc["strategy"].get<std::string>();
    if (doc.contains("seed") && !overridden("--seed"))
      d.common.seed = doc["seed"].get<std::uint64_t>();
  }

  ExperimentConfig cfg;
  cfg.params.q = d.q;
  cfg.params.d = d.dplus1 - 1;
  if (d.mode != "ssm" && d.mode != "wsm") throw std::invalid_argument("mode must be wsm or ssm");
  cfg.mode = d.mode == "ssm" ? MixingMode::kSsm : MixingMode::kWsm;
  cfg.depths = parse_depths(d.depths);
  cfg.strategy = parse_strategy(d.strategy);
  cfg.instances_per_depth = d.instances;
  cfg.seed = d.common.seed;

  // Threshold w for the chosen mode; the default w, and the probe gate. When
  // the threshold formulas do not cover the parameters (say q = 2), an
  // explicit --w still runs as a probe.
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool extrapolated = false;
  try {
    if (cfg.mode == MixingMode::kWsm) {
      threshold = 1.0 - alpha_wsm(cfg.params).alpha * cfg.params.q / (cfg.params.d + 1);
    } else {
      const SsmAlpha sa = alpha_ssm_numeric(cfg.params);
      threshold = 1.0 - sa.alpha * cfg.params.q / (cfg.params.d + 1);
      extrapolated = sa.extrapolated;
    }
  } catch (const std::invalid_argument&) {
    if (std::isnan(d.w)) throw;  // no threshold and no explicit w: nothing to run
  }
  cfg.params.w = std::isnan(d.w) ? threshold : d.w;
  cfg.params.validate();
  const bool probe = std::isnan(threshold) || cfg.params.w < threshold - 1e-12;

  const DecayReport rep =
      cfg.mode == MixingMode::kWsm ? run_wsm_experiment(cfg) : run_ssm_experiment(cfg);

  JsonObj config;
  config.field("command", "decay")
      .field("mode", d.mode)
      .field("q", d.q)
      .field("dplus1", d.dplus1)
      .field("w", cfg.params.w)
      .field("depths", d.depths)
      .field("instances_per_depth", d.instances)
      .field("strategy", d.strategy)
      .field("seed", static_cast<long>(d.common.seed));
  const std::string config_json = config.str(false);

  write_outputs(d.common, "decay", config_json, "decay_report.csv", decay_report_csv(rep),
                "decay_summary.json", decay_report_json(rep, cfg, probe, extrapolated));
  const bool pass = probe || rep.rate_ok;
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "decay " << d.mode
            << ": fitted_rate=" << format_double(rep.fitted_rate)
            << " target=" << format_double(rep.target_rate) << (probe ? " (probe)" : "")
            << (rep.degenerate_fit ? " (degenerate fit)" : "") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anti-ferromagnetic Potts model on trees: exact recursions, closed-form bound "
               "verification, and spatial-mixing decay experiments"};
  app.require_subcommand(1);

  VerifyOpts v;
  CLI::App* verify = app.add_subcommand("verify", "run a lemma verification suite");
  add_common(verify, v.common);
  std::string suite_help = "one of: all";
  for (const auto& s : kSuites) suite_help += ", " + s;
  verify->add_option("--suite", v.suite, suite_help)->required();
  verify->add_option("--q", v.q, "number of colors (0 = suite default set)");
  verify->add_option("--dplus1", v.dplus1, "degree bound d+1");
  verify->add_option("--d", v.d_flag, "branching bound d (alternative to --dplus1)");
  verify->add_option("--w", v.w, "edge interaction in [0,1]");
  verify->add_option("--alpha", v.alpha, "threshold parameter in (0,1]");
  verify->add_option("--points", v.points, "grid points for power-bound");
  verify->add_option("--instances", v.instances, "instance count override");
  verify->add_option("--grid", v.grid, "simplex grid resolution for bernoulli-opt");

  OracleOpts o;
  CLI::App* oracle = app.add_subcommand("oracle", "DP vs brute-force equivalence");
  add_common(oracle, o.common);
  oracle->add_option("--trees", o.trees, "number of random trees per q");
  oracle->add_option("--max-vertices", o.max_vertices, "vertex cap per tree (<= 16)");
  oracle->add_option("--boundaries", o.boundaries, "boundary conditions per tree");
  oracle->add_option("--q", o.q, "number of colors (0 = {2,3,4})");
  oracle->add_option("--w", o.w, "edge interaction (default: {0,0.1,0.5,0.9,1})");

  DecayOpts dc;
  CLI::App* decay = app.add_subcommand("decay", "spatial-mixing decay experiment");
  add_common(decay, dc.common);
  decay->add_option("--mode", dc.mode, "wsm|ssm");
  decay->add_option("--q", dc.q, "number of colors");
  decay->add_option("--dplus1", dc.dplus1, "degree bound d+1");
  decay->add_option("--w", dc.w, "edge interaction (default: mode threshold)");
  decay->add_option("--depths", dc.depths, "depth range A:B");
  decay->add_option("--instances", dc.instances, "instances per depth");
  decay->add_option("--strategy", dc.strategy,
                    "all_one_color_pair|random_pair|adversarial_search");
  decay->add_option("--config", dc.config_file, "JSON config file; flags override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(v);
    if (oracle->parsed()) return cmd_oracle(o);
    if (decay->parsed()) return cmd_decay(dc, decay);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
