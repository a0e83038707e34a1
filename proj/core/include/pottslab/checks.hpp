#pragma once

#include <vector>

#include "pottslab/bounds.hpp"
#include "pottslab/local_weight.hpp"
#include "pottslab/params.hpp"
#include "pottslab/report.hpp"
#include "pottslab/rng.hpp"
#include "pottslab/tree.hpp"

namespace pottslab {

/// A tree with two boundary conditions on the same vertex set. The checks
/// below constrain where the disagreements may sit relative to the root.
struct PairedInstance {
  RootedTree tree;
  BoundaryCondition tau;
  BoundaryCondition tau_prime;

  /// Vertices where the two boundary conditions disagree.
  std::vector<int> disagreement_set() const;

  /// Graph distance from the root to the nearest disagreement; INT_MAX when none.
  int disagreement_distance() const;

  /// Both conditions fix exactly the same vertices.
  bool same_support() const;
};

// ---------------------------------------------------------------------------
// Marginal bounds
// ---------------------------------------------------------------------------

/// One-step bound: every root marginal <= B(d) = 1/(1+(q-1)w^{d/(q-1)}).
/// Requires the root free with degree exactly d.
CheckReport marginal_bound_check_one_step(const RootedTree& tree, const BoundaryCondition& bc,
                                          const PottsParams& params);

/// Two-step bound: every root marginal <= B(ell) when the root has exactly
/// ell precolored neighbors. Requires w in (0,1).
CheckReport marginal_bound_check_two_step(const RootedTree& tree, const BoundaryCondition& bc,
                                          const PottsParams& params, int ell);

// ---------------------------------------------------------------------------
// Scalar lemmas
// ---------------------------------------------------------------------------

/// prod (1 - alpha x_i) >= (1 - alpha b)^{1/b} over the capped simplex
/// {0 <= x_i <= b, sum x_i = 1}, by exhaustive grid minimization with the
/// given resolution (step 1/grid). Also confirms the minimizer's structure:
/// all coordinates at 0 or b except at most one fractional one.
CheckReport bernoulli_product_min_check(int q, double b, double alpha, int grid);

/// (1-x)^{-1/x} <= e (1-x/2)/(1-x) at every grid point in (0,1).
CheckReport power_bound_check(const std::vector<double>& x_grid);

/// With w = 1 - alpha q/(d+1) and a = (d+1)/q:
///   (i)  w^{-(d+1)/q} <= K(a)
///   (ii) M(w)^{-(d+1)/q} <= e (1 + (e/2)/(d+1) / ((a-1)/(a-1/2) - e/(d+1))).
/// Requires q >= 3, d >= q+1, alpha in (0,1].
CheckReport useful_bound_check(const PottsParams& params, double alpha);

/// q B(d) <= K(a) (d >= q+1) and q B(0) <= min(q,13) (d >= q+2), at
/// w = 1 - alpha q/(d+1); alpha = 0 is allowed as a boundary probe (w = 1).
/// The observed q B(0) is recorded so the effective constant stays visible.
CheckReport corollary_B_check(const PottsParams& params, double alpha);

/// prod(1-beta_j) * sum(beta_k) <= (n/(n+1))^{n+1} <= 1/e for beta in [0,1]^n.
CheckReport check_beta_bound(const std::vector<double>& betas);

/// || sum_j D_j x_j ||^2 <= max_i sum_j D_j(i,i)^2 * sum_j ||x_j||^2 for
/// diagonal matrices given as vectors.
CheckReport diag_norm_lemma_check(const std::vector<Vec>& diagonals,
                                  const std::vector<Vec>& vectors);

// ---------------------------------------------------------------------------
// Instance verifiers for the contraction machinery
// ---------------------------------------------------------------------------

/// Lower bound on S(Z(t)) at the root of a paired instance whose
/// disagreements sit at distance > 1:
///   S >= q w^{(d-f)/q} prod_{j free} (1-(1-w)B(ell_j))^{1/(q B(ell_j))},
/// with ell_j the number of fixed children of the j-th free child, plus the
/// two weaker corollary forms. Checked at the local-weight argmax t and on a
/// t-grid. Requires w in (0,1).
CheckReport lower_bound_S_check(const PairedInstance& inst, const PottsParams& params);

/// Squared local weight at the root against its closed-form bounds: the
/// free-neighbor-count bound always, and the all-free bound when the whole
/// distance-2 neighborhood of the root is free. Also verifies lambda^2 >= 1/q.
/// Requires w = 1 - alpha q/(d+1), q >= 3, d >= q+2, disagreements at
/// distance > 1.
CheckReport lambda_bound_check(const PairedInstance& inst, const PottsParams& params,
                               double alpha);

struct NormBoundOptions {
  int simpson_panels = 4096;  // fixed panel count keeps results reproducible
  int link_grid = 128;        // t-grid (intervals) for the per-t chain links
  double tol_theorem = 1e-10;
  double tol_quadrature = 1e-8;
  double tol_exact = 1e-12;
};

/// The contraction inequality at the root,
///   ||X_v - Y_v||^2 <= (1-w)/e * sum_{k free} lambda_k^2 ||X_k - Y_k||^2,
/// together with every intermediate link of its derivation: the reduction to
/// free children, the Jensen/integral step (composite Simpson), the
/// diagonal-norm inequality on the factored Jacobian data, the projector
/// contraction, and the beta product-sum bound at every grid point. Fixed
/// children must carry the same color under both boundary conditions.
/// Requires w in (0,1].
CheckReport verify_norm_bound(const PairedInstance& inst, const PottsParams& params,
                              const NormBoundOptions& opts = NormBoundOptions{});

enum class MixingMode { kWsm, kSsm };

/// Per-step induction condition at a given alpha. WSM: (alpha q/e) lambda^2
/// bound <= 1. SSM: the f_k-indexed step bound <= d/(d+1), with f_k = -1
/// sweeping all of 0..d and verifying the maximum sits at f_k = d whenever
/// a >= a* (where K(a) <= e^2 makes the step bound increasing in f_k).
CheckReport induction_step_check(const PottsParams& params, double alpha, MixingMode mode,
                                 int f_k = -1);

// ---------------------------------------------------------------------------
// Seeded instance generators
// ---------------------------------------------------------------------------

struct PairedInstanceOptions {
  int max_vertices = 24;
  int min_vertices = 4;
  int min_disagree_depth = 2;  // theorem hypothesis: fixed root-children agree
  int min_fixed_depth = 1;     // common fixed vertices may touch the root's children
  double fix_prob = 0.35;
};

/// Random tree plus two boundary conditions with identical support, agreeing
/// above min_disagree_depth; at least one disagreement is forced whenever the
/// tree is deep enough to host one.
PairedInstance random_paired_instance(Rng& rng, const PottsParams& params,
                                      const PairedInstanceOptions& opts);

}  // namespace pottslab
