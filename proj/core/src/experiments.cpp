#include "pottslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pottslab/dp.hpp"
#include "pottslab/io.hpp"
#include "pottslab/parallel.hpp"
#include "pottslab/vec.hpp"

namespace pottslab {

namespace {

constexpr long kExplicitVertexCap = 2'000'000;

void guard_explicit_size(int arity, int height) {
  double n = 1.0, level = 1.0;
  for (int h = 0; h < height; ++h) {
    level *= arity;
    n += level;
    if (n > kExplicitVertexCap)
      throw std::invalid_argument("experiment: explicit tree too large at depth " +
                                  std::to_string(height) + "; use the symmetric strategy");
  }
}

double discrepancy(const Vec& p, const Vec& p_prime) {
  return max_abs_diff(p, p_prime);
}

// Least-squares fit of log(disc) against depth over the deepest half.
void fit_decay(DecayReport& rep) {
  const std::size_t k = rep.per_depth.size();
  std::size_t start = k / 2;
  if (k - start < 2) start = 0;
  if (k - start < 2) {
    rep.degenerate_fit = true;
    return;
  }
  for (std::size_t i = start; i < k; ++i)
    if (rep.per_depth[i].max_discrepancy <= 0.0) {
      rep.degenerate_fit = true;  // exact zeros short-circuit the fit
      return;
    }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(k - start);
  for (std::size_t i = start; i < k; ++i) {
    const double x = rep.per_depth[i].depth;
    const double y = std::log(rep.per_depth[i].max_discrepancy);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    rep.degenerate_fit = true;
    return;
  }
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  rep.fitted_rate = std::exp(slope);
  rep.fitted_c = std::exp(intercept);
}

void finalize_report(DecayReport& rep, const ExperimentConfig& cfg) {
  rep.target_rate = static_cast<double>(cfg.params.d) / (cfg.params.d + 1);
  fit_decay(rep);
  rep.rate_ok = rep.degenerate_fit ? true : rep.fitted_rate <= rep.target_rate + 0.01;
}

// Explicit complete tree with its full boundary level, evaluated for any
// assignment of colors to that level.
struct LevelBoundaryRun {
  RootedTree tree;
  std::vector<int> level_vertices;

  LevelBoundaryRun(int arity, int height)
      : tree(RootedTree::complete(arity, height)),
        level_vertices(tree.vertices_at_depth(height)) {}

  Vec marginals(const PottsParams& params, const std::vector<int>& colors) const {
    BoundaryCondition bc(tree.vertex_count());
    for (std::size_t i = 0; i < level_vertices.size(); ++i) bc.fix(level_vertices[i], colors[i]);
    return root_marginals_dp(tree, bc, params);
  }
};

// Coordinate ascent over both boundary colorings, maximizing the root
// discrepancy; 50 sweeps cap, stops at the first sweep without improvement.
double adversarial_max_discrepancy(const LevelBoundaryRun& run, const PottsParams& params,
                                   std::vector<int>& tau, std::vector<int>& tau_prime) {
  const int sweeps_cap = 50;
  double best = discrepancy(run.marginals(params, tau), run.marginals(params, tau_prime));
  for (int sweep = 0; sweep < sweeps_cap; ++sweep) {
    bool improved = false;
    for (auto* side : {&tau, &tau_prime}) {
      for (std::size_t u = 0; u < side->size(); ++u) {
        const int keep = (*side)[u];
        int best_color = keep;
        for (int c = 0; c < params.q; ++c) {
          if (c == keep) continue;
          (*side)[u] = c;
          const double d = discrepancy(run.marginals(params, tau), run.marginals(params, tau_prime));
          if (d > best + 1e-15) {
            best = d;
            best_color = c;
            improved = true;
          }
        }
        (*side)[u] = best_color;
      }
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace

void ExperimentConfig::validate() const {
  params.validate();
  if (depths.empty()) throw std::invalid_argument("experiment: depth range is empty");
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1])
      throw std::invalid_argument("experiment: depths must be strictly ascending");
  if (depths.front() < 1) throw std::invalid_argument("experiment: depths start at 1");
  if (instances_per_depth < 1) throw std::invalid_argument("experiment: need >= 1 instance per depth");
}

DecayReport run_wsm_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != MixingMode::kWsm) throw std::invalid_argument("run_wsm_experiment: mode must be WSM");
  const PottsParams& params = cfg.params;
  DecayReport rep;
  rep.per_depth.resize(cfg.depths.size());

  if (cfg.strategy == BoundaryStrategy::kAllOneColorPair) {
    // Level symmetry: the extremal all-1 vs all-2 pair never leaves the
    // symmetric orbit, so one vector iteration per level suffices.
    for (std::size_t di = 0; di < cfg.depths.size(); ++di) {
      const int t = cfg.depths[di];
      const Vec p = complete_tree_iterate(params, RatioVector::basis(params.q, 0), t).marginals();
      const Vec p2 = complete_tree_iterate(params, RatioVector::basis(params.q, 1), t).marginals();
      rep.per_depth[di] = DepthPoint{t, discrepancy(p, p2), 1};
    }
    for (std::size_t di = 1; di < cfg.depths.size(); ++di) {
      if (rep.per_depth[di].depth <= 2) continue;
      if (rep.per_depth[di].max_discrepancy > rep.per_depth[di - 1].max_discrepancy + 1e-12)
        rep.anomalies.push_back(rep.per_depth[di].depth);
    }
    finalize_report(rep, cfg);
    return rep;
  }

  // Explicit complete trees with a full fixed level.
  parallel_for(cfg.depths.size(), [&](std::size_t di) {
    const int t = cfg.depths[di];
    guard_explicit_size(params.d, t);
    LevelBoundaryRun run(params.d, t);
    const std::size_t level_size = run.level_vertices.size();
    double worst = 0.0;
    for (int j = 0; j < cfg.instances_per_depth; ++j) {
      Rng rng(Rng::derive(cfg.seed, di * 1000003ULL + j));
      std::vector<int> tau(level_size), tau_prime(level_size);
      if (cfg.strategy == BoundaryStrategy::kAdversarialSearch && j == 0) {
        // Ascent from the extremal symmetric pair.
        std::fill(tau.begin(), tau.end(), 0);
        std::fill(tau_prime.begin(), tau_prime.end(), 1 % params.q);
      } else {
        for (auto& c : tau) c = rng.next_int(params.q);
        for (auto& c : tau_prime) c = rng.next_int(params.q);
      }
      double d;
      if (cfg.strategy == BoundaryStrategy::kAdversarialSearch)
        d = adversarial_max_discrepancy(run, params, tau, tau_prime);
      else
        d = discrepancy(run.marginals(params, tau), run.marginals(params, tau_prime));
      worst = std::max(worst, d);
    }
    rep.per_depth[di] = DepthPoint{t, worst, cfg.instances_per_depth};
  });
  finalize_report(rep, cfg);
  return rep;
}

namespace {

// Random far-boundary instance for the SSM runs: spine of length t keeps the
// nearest disagreement at distance exactly t; other vertices fix at any depth.
PairedInstance ssm_instance(Rng& rng, const PottsParams& params, int t, int budget) {
  PairedInstanceOptions opts;
  opts.min_disagree_depth = t;
  opts.min_fixed_depth = 1;
  opts.min_vertices = std::min(budget, t + 4);
  opts.max_vertices = std::max(opts.min_vertices, budget);
  opts.fix_prob = 0.3;
  return random_paired_instance(rng, params, opts);
}

}  // namespace

DecayReport run_ssm_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != MixingMode::kSsm) throw std::invalid_argument("run_ssm_experiment: mode must be SSM");
  if (!(cfg.params.w > 0.0)) throw std::invalid_argument("run_ssm_experiment: requires w > 0");
  const PottsParams& params = cfg.params;
  DecayReport rep;
  rep.per_depth.resize(cfg.depths.size());

  const std::size_t ni = static_cast<std::size_t>(cfg.instances_per_depth);
  std::vector<double> disc(cfg.depths.size() * ni, 0.0);
  parallel_for(disc.size(), [&](std::size_t idx) {
    const std::size_t di = idx / ni;
    const int j = static_cast<int>(idx % ni);
    const int t = cfg.depths[di];
    Rng rng(Rng::derive(cfg.seed, di * 1000003ULL + j));
    if (j == 0) {
      // Extremal instance: the full level at distance t disagrees everywhere.
      guard_explicit_size(params.d, t);
      LevelBoundaryRun run(params.d, t);
      const std::vector<int> ones(run.level_vertices.size(), 0);
      const std::vector<int> twos(run.level_vertices.size(), 1 % params.q);
      disc[idx] = discrepancy(run.marginals(params, ones), run.marginals(params, twos));
    } else {
      const PairedInstance inst = ssm_instance(rng, params, t, 40 * (t + 2));
      const Vec p = root_marginals_dp(inst.tree, inst.tau, params);
      const Vec p2 = root_marginals_dp(inst.tree, inst.tau_prime, params);
      disc[idx] = discrepancy(p, p2);
    }
  });
  for (std::size_t di = 0; di < cfg.depths.size(); ++di) {
    double worst = 0.0;
    for (std::size_t j = 0; j < ni; ++j) worst = std::max(worst, disc[di * ni + j]);
    rep.per_depth[di] = DepthPoint{cfg.depths[di], worst, cfg.instances_per_depth};
  }
  finalize_report(rep, cfg);
  return rep;
}

ContractionTrace sqrt_ratio_contraction_trace(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!(cfg.params.w > 0.0)) throw std::invalid_argument("contraction trace: requires w > 0");
  const PottsParams& params = cfg.params;
  const int t = cfg.depths.back();

  struct Accum {
    double sum = 0.0, max = 0.0;
    long count = 0;
  };
  std::vector<Accum> acc(t + 1);

  for (int j = 0; j < cfg.instances_per_depth; ++j) {
    Rng rng(Rng::derive(cfg.seed, 7777777ULL + j));
    const PairedInstance inst = ssm_instance(rng, params, t, 40 * (t + 2));
    const auto rx = ratio_vectors_all(inst.tree, inst.tau, params);
    const auto ry = ratio_vectors_all(inst.tree, inst.tau_prime, params);

    // Union of root-to-disagreement paths.
    std::vector<char> on_path(inst.tree.vertex_count(), 0);
    for (int delta : inst.disagreement_set())
      for (int u = delta; u != -1; u = inst.tree.parent(u)) on_path[u] = 1;

    for (int u = 0; u < inst.tree.vertex_count(); ++u) {
      if (!on_path[u] || inst.tree.depth(u) > t) continue;
      const Vec xu = SqrtRatioVector::of(rx[u]).entries;
      const Vec yu = SqrtRatioVector::of(ry[u]).entries;
      const double sq = norm2_sq(sub(xu, yu));
      Accum& a = acc[inst.tree.depth(u)];
      a.sum += sq;
      a.max = std::max(a.max, sq);
      ++a.count;
    }
  }

  ContractionTrace trace;
  for (int level = 0; level <= t; ++level) {
    const Accum& a = acc[level];
    trace.levels.push_back(TraceLevel{level, a.count ? a.sum / a.count : 0.0, a.max, a.count});
  }
  int deepest = 0;
  for (int level = t; level >= 0; --level)
    if (acc[level].count > 0 && acc[level].sum > 0.0) {
      deepest = level;
      break;
    }
  const double d0 = trace.levels[0].mean_sq_dist;
  if (deepest == 0 || d0 <= 0.0) {
    trace.all_zero = true;
    trace.step_ratio = 0.0;
    trace.step_ratio_ok = true;
  } else {
    const double dl = trace.levels[deepest].mean_sq_dist;
    trace.step_ratio = std::pow(d0 / dl, 1.0 / deepest);
    trace.step_ratio_ok =
        trace.step_ratio <= static_cast<double>(params.d) / (params.d + 1) + 0.02;
  }
  return trace;
}

std::string decay_report_csv(const DecayReport& r) {
  CsvWriter csv({"depth", "max_discrepancy", "n_instances"});
  for (const auto& row : r.per_depth) {
    csv.add_field(row.depth);
    csv.add_field(row.max_discrepancy);
    csv.add_field(row.n_instances);
    csv.end_row();
  }
  return csv.str();
}

std::string decay_report_json(const DecayReport& r, const ExperimentConfig& cfg, bool probe_mode,
                              bool threshold_extrapolated) {
  std::string depths = "[";
  for (std::size_t i = 0; i < r.per_depth.size(); ++i) {
    if (i) depths += ',';
    depths += std::to_string(r.per_depth[i].depth);
  }
  depths += ']';
  std::string anomalies = "[";
  for (std::size_t i = 0; i < r.anomalies.size(); ++i) {
    if (i) anomalies += ',';
    anomalies += std::to_string(r.anomalies[i]);
  }
  anomalies += ']';

  JsonObj o;
  o.field("mode", cfg.mode == MixingMode::kWsm ? "wsm" : "ssm")
      .field("q", cfg.params.q)
      .field("dplus1", cfg.params.d + 1)
      .field("w", cfg.params.w)
      .field("strategy", cfg.strategy == BoundaryStrategy::kAllOneColorPair ? "all_one_color_pair"
             : cfg.strategy == BoundaryStrategy::kRandomPair               ? "random_pair"
                                                                           : "adversarial_search")
      .field("instances_per_depth", cfg.instances_per_depth)
      .field("seed", static_cast<long>(cfg.seed))
      .field_raw("depths", depths)
      .field("fitted_rate", r.fitted_rate)
      .field("fitted_C", r.fitted_c)
      .field("target_rate", r.target_rate)
      .field("degenerate_fit", r.degenerate_fit)
      .field("pass", r.rate_ok)
      .field("probe", probe_mode)
      .field("threshold_extrapolated", threshold_extrapolated)
      .field_raw("anomalies", anomalies);
  return o.str();
}

}  // namespace pottslab
