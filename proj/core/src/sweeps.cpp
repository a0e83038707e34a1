#include "pottslab/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pottslab/dp.hpp"
#include "pottslab/exact.hpp"
#include "pottslab/io.hpp"
#include "pottslab/parallel.hpp"
#include "pottslab/recursion.hpp"

namespace pottslab {

namespace {

constexpr double kTiny = 1e-300;

// Runs one task per index and merges the reports in index order, so the
// result does not depend on the worker count.
CheckReport run_indexed(const std::string& name, std::size_t n,
                        const std::function<CheckReport(std::size_t)>& task,
                        const std::string& prefix_stem) {
  std::vector<CheckReport> parts(n, CheckReport(name));
  parallel_for(n, [&](std::size_t i) { parts[i] = task(i); });
  CheckReport merged(name);
  for (std::size_t i = 0; i < n; ++i)
    merged.merge(parts[i], prefix_stem + std::to_string(i) + "/");
  return merged;
}

// Root stays free; everything else is fixed with the given probability.
BoundaryCondition sample_boundary(Rng& rng, const RootedTree& tree, int q, double fix_prob) {
  BoundaryCondition bc(tree.vertex_count());
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (v != tree.root() && rng.next_bool(fix_prob)) bc.fix(v, rng.next_int(q));
  return bc;
}

}  // namespace

CheckReport sweep_oracle_equivalence(int n_trees, int max_vertices, int boundaries_per_tree,
                                     const std::vector<int>& qs, const std::vector<double>& ws,
                                     std::uint64_t seed) {
  if (max_vertices < 2 || max_vertices > kMaxBruteForceFree)
    throw std::invalid_argument("oracle sweep: max_vertices must lie in 2.." +
                                std::to_string(kMaxBruteForceFree));
  const std::size_t tasks = static_cast<std::size_t>(n_trees) * qs.size();
  return run_indexed("oracle-equivalence", tasks, [&](std::size_t idx) {
    const int q = qs[idx / n_trees];
    Rng rng(Rng::derive(seed, idx));
    const int n = 2 + rng.next_int(max_vertices - 1);
    const RootedTree tree = random_tree(rng, n, 4);
    int d = 2;
    for (int v = 0; v < n; ++v) d = std::max(d, tree.child_count(v));

    CheckReport rep("oracle-equivalence");
    for (int b = 0; b < boundaries_per_tree; ++b) {
      const BoundaryCondition bc = sample_boundary(rng, tree, q, 0.4);
      for (double w : ws) {
        PottsParams params{q, w, d};
        const std::string tag = "q=" + std::to_string(q) + "/w=" + format_double(w) + "/bc=" +
                                std::to_string(b);
        bool dp_degenerate = false, bf_degenerate = false;
        Vec dp_marg, bf_marg(q, 0.0);
        try {
          dp_marg = root_marginals_dp(tree, bc, params);
        } catch (const DegenerateInstance&) {
          dp_degenerate = true;
        }
        try {
          for (int i = 0; i < q; ++i) bf_marg[i] = brute_force_marginal(tree, bc, params, tree.root(), i);
        } catch (const DegenerateInstance&) {
          bf_degenerate = true;
        }
        if (dp_degenerate || bf_degenerate) {
          // Zero partition function must be recognized by both engines.
          rep.require_le("degenerate-agree/" + tag, dp_degenerate == bf_degenerate ? 0.0 : 1.0,
                         0.0, 0.0);
          continue;
        }
        double max_rel = 0.0;
        for (int i = 0; i < q; ++i)
          max_rel = std::max(max_rel,
                             std::abs(dp_marg[i] - bf_marg[i]) / std::max(bf_marg[i], kTiny));
        rep.require_le("rel-error/" + tag, max_rel, 1e-9, 0.0);
        rep.require_le("normalization/" + tag, std::abs(vec_sum(dp_marg) - 1.0), 1e-12, 0.0);
      }
    }
    return rep;
  }, "tree=");
}

CheckReport sweep_jacobian_fd(int n_points, const std::vector<int>& qs,
                              const std::vector<double>& ws, std::uint64_t seed) {
  const std::size_t tasks = qs.size() * ws.size();
  return run_indexed("jacobian-fd", tasks, [&](std::size_t idx) {
    const int q = qs[idx / ws.size()];
    const double w = ws[idx % ws.size()];
    Rng rng(Rng::derive(seed, idx));
    CheckReport rep("jacobian-fd");
    const PottsParams params{q, w, std::max(2, q)};
    for (int p = 0; p < n_points; ++p) {
      Vec x(q);
      for (int i = 0; i < q; ++i) x[i] = rng.next_range(0.1, 1.0);
      const auto analytic = jacobian_f(x, params).dense();
      const auto fd = finite_difference_jacobian(x, params, 1e-5);
      double max_abs = 0.0;
      for (int i = 0; i < q; ++i) max_abs = std::max(max_abs, max_abs_diff(analytic[i], fd[i]));
      rep.require_le("jacobian/q=" + std::to_string(q) + "/w=" + format_double(w) + "/pt=" +
                         std::to_string(p),
                     max_abs, 1e-6, 0.0);
    }
    return rep;
  }, "combo=");
}

CheckReport sweep_norm_bound(const PottsParams& base, const std::vector<double>& ws,
                             int n_instances, std::uint64_t seed) {
  return run_indexed("norm-bound", n_instances, [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    PottsParams params = base;
    params.w = ws[i % ws.size()];
    params.d = 3 + rng.next_int(std::max(1, base.d - 2));  // 3..d
    PairedInstanceOptions opts;
    opts.max_vertices = 22;
    const PairedInstance inst = random_paired_instance(rng, params, opts);
    return verify_norm_bound(inst, params);
  }, "inst=");
}

namespace {

// Root with exactly d children; extras attach below them.
RootedTree one_step_tree(Rng& rng, int d, int extra) {
  const int n = 1 + d + extra;
  std::vector<int> parent(n, -1);
  std::vector<int> child_count(n, 0);
  std::vector<int> open;
  for (int v = 1; v <= d; ++v) {
    parent[v] = 0;
    open.push_back(v);
  }
  child_count[0] = d;
  for (int v = d + 1; v < n; ++v) {
    const int pick = rng.next_int(static_cast<int>(open.size()));
    const int p = open[pick];
    parent[v] = p;
    if (++child_count[p] == d) open.erase(open.begin() + pick);
    open.push_back(v);
  }
  return RootedTree(0, std::move(parent));
}

}  // namespace

CheckReport sweep_marginal_bounds(const std::vector<int>& qs, int d_max,
                                  const std::vector<double>& ws, int n_instances,
                                  std::uint64_t seed) {
  if (d_max < 3) throw std::invalid_argument("marginal sweep: d_max must be >= 3");
  return run_indexed("prob-basic", static_cast<std::size_t>(n_instances), [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    const int q = qs[i % qs.size()];
    const double w = ws[(i / qs.size()) % ws.size()];
    const int d = 3 + rng.next_int(d_max - 2);
    const PottsParams params{q, w, d};

    CheckReport rep("prob-basic");
    {
      const RootedTree tree = one_step_tree(rng, d, rng.next_int(7));
      const BoundaryCondition bc = sample_boundary(rng, tree, q, 0.5);
      rep.merge(marginal_bound_check_one_step(tree, bc, params));
    }
    {
      PairedInstanceOptions opts;
      opts.max_vertices = 16;
      opts.min_disagree_depth = 1;
      const PairedInstance inst = random_paired_instance(rng, params, opts);
      int ell = 0;
      for (int c : inst.tree.children(0))
        if (inst.tau.fixed(c)) ++ell;
      rep.merge(marginal_bound_check_two_step(inst.tree, inst.tau, params, ell));
    }
    return rep;
  }, "inst=");
}

CheckReport sweep_lower_bound_S(const PottsParams& base, int n_instances, std::uint64_t seed) {
  if (base.d < 3) throw std::invalid_argument("S sweep: d must be >= 3");
  return run_indexed("S-lower", static_cast<std::size_t>(n_instances), [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    PottsParams params = base;
    params.d = 3 + rng.next_int(base.d - 2);
    PairedInstanceOptions opts;
    opts.max_vertices = 20;
    const PairedInstance inst = random_paired_instance(rng, params, opts);
    return lower_bound_S_check(inst, params);
  }, "inst=");
}

CheckReport sweep_lambda_bounds(const PottsParams& base, const std::vector<double>& alphas,
                                int n_instances, std::uint64_t seed) {
  return run_indexed("lambda-bound", static_cast<std::size_t>(n_instances), [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    const double alpha = alphas[i % alphas.size()];
    PottsParams params = base;
    params.w = 1.0 - alpha * params.q / double(params.d + 1);
    PairedInstanceOptions opts;
    opts.max_vertices = 24;
    if (i % 2 == 1) {
      // Fully free distance-2 neighborhood, exercising the sharper bound.
      opts.min_fixed_depth = 3;
      opts.min_disagree_depth = 3;
    }
    const PairedInstance inst = random_paired_instance(rng, params, opts);
    return lambda_bound_check(inst, params, alpha);
  }, "inst=");
}

CheckReport sweep_power_bound(int n_points, double lo, double hi) {
  if (n_points < 2) throw std::invalid_argument("power sweep: need at least 2 points");
  std::vector<double> xs(n_points);
  for (int i = 0; i < n_points; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n_points - 1);
  return power_bound_check(xs);
}

CheckReport sweep_useful_bound(const std::vector<int>& qs, int d_max,
                               const std::vector<double>& alphas) {
  CheckReport rep("useful-bound");
  // The threshold ratio pins K(a*) = e^2 exactly.
  const double k_at_threshold = bound_k(k_equals_e2_threshold());
  rep.require_le("K-at-threshold", std::abs(k_at_threshold - std::numbers::e * std::numbers::e),
                 0.0, 1e-12);
  for (int q : qs)
    for (int d = q + 1; d <= d_max; ++d)
      for (double alpha : alphas) rep.merge(useful_bound_check(PottsParams{q, 0.5, d}, alpha));
  return rep;
}

CheckReport sweep_corollary_B(const std::vector<int>& qs, int d_max,
                              const std::vector<double>& alphas) {
  CheckReport rep("corollary-B");
  for (int q : qs)
    for (int d = q + 1; d <= d_max; ++d)
      for (double alpha : alphas) rep.merge(corollary_B_check(PottsParams{q, 0.5, d}, alpha));
  return rep;
}

CheckReport sweep_beta_bound(int n_vectors, int n_max, std::uint64_t seed) {
  CheckReport rep("beta-bound");
  Rng rng(seed);
  for (int i = 0; i < n_vectors; ++i) {
    std::vector<double> betas(1 + rng.next_int(n_max));
    for (double& b : betas) b = rng.next_unit();
    rep.merge(check_beta_bound(betas), "vec=" + std::to_string(i) + "/");
  }
  return rep;
}

CheckReport sweep_diag_norm(int n_instances, int q_max, int d_max, std::uint64_t seed) {
  CheckReport rep("diag-norm");
  Rng rng(seed);
  for (int i = 0; i < n_instances; ++i) {
    const int q = 2 + rng.next_int(std::max(1, q_max - 1));
    const int d = 1 + rng.next_int(d_max);
    std::vector<Vec> diagonals(d, Vec(q)), vectors(d, Vec(q));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < q; ++k) {
        diagonals[j][k] = rng.next_range(-1.0, 1.0);
        vectors[j][k] = rng.next_range(-1.0, 1.0);
      }
    rep.merge(diag_norm_lemma_check(diagonals, vectors), "sys=" + std::to_string(i) + "/");
  }
  return rep;
}

CheckReport sweep_bernoulli(int q, int grid) {
  CheckReport rep("bernoulli-opt");
  const std::vector<double> bs = {0.2, 0.25, 0.34, 0.4, 0.5, 0.75, 1.0};
  const std::vector<double> alphas = {0.0, 0.25, 0.5, 0.7, 1.0};
  for (double b : bs) {
    if (q * b < 1.0) continue;
    if (std::floor(b * grid + 1e-9) * q < grid) continue;  // not representable on this grid
    for (double alpha : alphas)
      rep.merge(bernoulli_product_min_check(q, b, alpha, grid),
                "b=" + format_double(b) + "/alpha=" + format_double(alpha) + "/");
  }
  return rep;
}

CheckReport sweep_induction_step(const PottsParams& params) {
  CheckReport rep("induction-step");
  if (params.q >= 3 && params.d >= params.q + 2) {
    const WsmAlpha wa = alpha_wsm(params);
    rep.merge(induction_step_check(params, wa.alpha, MixingMode::kWsm), "wsm/");
    rep.merge(induction_step_check(params, wa.alpha_conservative, MixingMode::kWsm),
              "wsm-conservative/");
  }
  if (params.a() >= k_equals_e2_threshold()) {
    const SsmAlpha sa = alpha_ssm_numeric(params);
    rep.merge(induction_step_check(params, sa.alpha, MixingMode::kSsm), "ssm/");
    if (params.d + 1 > std::numbers::e * std::numbers::e)
      rep.merge(induction_step_check(params, alpha_ssm(params), MixingMode::kSsm),
                "ssm-closed-form/");
  }
  return rep;
}

}  // namespace pottslab
