#pragma once

#include <cstdint>
#include <vector>

#include "pottslab/checks.hpp"
#include "pottslab/report.hpp"

namespace pottslab {

/// Canonical seeded sweeps behind the `verify` and `oracle` commands. Each
/// sweep derives one RNG stream per instance index, so results are identical
/// for any worker count, and merges reports in index order.

/// Dynamic-programming marginals against the brute-force oracle: n_trees
/// random trees of up to max_vertices vertices per q, boundaries_per_tree
/// sampled boundary conditions, all (q, w) combinations. Records the relative
/// error of every marginal (pass tolerance 1e-9). Instances whose partition
/// function vanishes at w = 0 must be flagged degenerate by both sides.
CheckReport sweep_oracle_equivalence(int n_trees, int max_vertices, int boundaries_per_tree,
                                     const std::vector<int>& qs, const std::vector<double>& ws,
                                     std::uint64_t seed);

/// Analytic Jacobian of the one-step map against central finite differences
/// (step 1e-5, tolerance 1e-6 max-abs) at n_points random strictly positive
/// vectors per (q, w).
CheckReport sweep_jacobian_fd(int n_points, const std::vector<int>& qs,
                              const std::vector<double>& ws, std::uint64_t seed);

/// verify_norm_bound over n_instances random paired instances, cycling the
/// given w values, with q and branching bound fixed by params.
CheckReport sweep_norm_bound(const PottsParams& params, const std::vector<double>& ws,
                             int n_instances, std::uint64_t seed);

/// One- and two-step marginal bounds over random instances; n_instances each.
CheckReport sweep_marginal_bounds(const std::vector<int>& qs, int d_max,
                                  const std::vector<double>& ws, int n_instances,
                                  std::uint64_t seed);

/// lower_bound_S_check over random far-disagreement instances.
CheckReport sweep_lower_bound_S(const PottsParams& params, int n_instances, std::uint64_t seed);

/// lambda_bound_check over random far-disagreement instances (cycling alpha
/// over alphas), plus fully-free-neighborhood instances for the all-free bound.
CheckReport sweep_lambda_bounds(const PottsParams& params, const std::vector<double>& alphas,
                                int n_instances, std::uint64_t seed);

/// power_bound_check on n_points evenly spaced in [lo, hi].
CheckReport sweep_power_bound(int n_points, double lo = 1e-4, double hi = 0.999);

/// useful_bound_check over q in qs, d in q+1..d_max, alpha in alphas; also
/// pins K(a*) = e^2 to 1e-12.
CheckReport sweep_useful_bound(const std::vector<int>& qs, int d_max,
                               const std::vector<double>& alphas);

/// corollary_B_check over the same grid.
CheckReport sweep_corollary_B(const std::vector<int>& qs, int d_max,
                              const std::vector<double>& alphas);

/// check_beta_bound on n_vectors random beta vectors of length <= n_max.
CheckReport sweep_beta_bound(int n_vectors, int n_max, std::uint64_t seed);

/// diag_norm_lemma_check on random diagonal/vector systems.
CheckReport sweep_diag_norm(int n_instances, int q_max, int d_max, std::uint64_t seed);

/// bernoulli_product_min_check over a default (b, alpha) grid at the given q.
CheckReport sweep_bernoulli(int q, int grid);

/// induction_step_check in both modes at the module alphas for the given
/// parameters (WSM when q >= 3, d >= q+2; SSM sweeping f_k).
CheckReport sweep_induction_step(const PottsParams& params);

}  // namespace pottslab
