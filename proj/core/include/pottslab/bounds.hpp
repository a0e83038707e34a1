#pragma once

#include <optional>
#include <vector>

#include "pottslab/params.hpp"

namespace pottslab {

/// M(w) = (1 - (1-w)/(1+(q-1)w^{d/(q-1)}))^{1+(q-1)w^{d/(q-1)}}.
/// Exceeds w on (0,1) by Bernoulli's inequality. Requires w in (0,1].
double bound_m(const PottsParams& params);

/// B(ell) = 1 / (1 + (q-1) w^{ell/(q-1)} M(w)^{(d-ell)/(q-1)}), the marginal
/// bound for a free vertex with ell precolored neighbors. Strictly increasing
/// in ell for w in (0,1); identically 1/q at w = 1. Requires 0 <= ell <= d.
double bound_b(int ell, const PottsParams& params);

/// K(a) = e (a - 1/2) / (a - 1) for a > 1; strictly decreasing with infimum e.
double bound_k(double a);

/// The degree-to-color ratio a* = (e - 1/2)/(e - 1) at which K(a*) = e^2.
double k_equals_e2_threshold();

struct WsmAlpha {
  double alpha;               // with k_effective
  double k_effective;         // q * B(0) at w = 1 - q/(d+1), clamped to k_cap
  double alpha_conservative;  // same formula with K = k_cap
  double k_cap;               // min(q, 13)
};

/// alpha for the weak-mixing threshold w >= 1 - alpha q/(d+1):
/// 1/alpha = (1 + (K/2)/(d+1-K)) (1 - min(9,q+2)/(d+1))^{-2}.
/// K is evaluated as q*B(0) at the smallest w in range (B(0) decreases in w,
/// so this K is valid across the whole range); the universal cap min(q,13)
/// variant is reported alongside. Requires q >= 3 and d >= q+2.
WsmAlpha alpha_wsm(const PottsParams& params);

/// Closed-form alpha for the strong-mixing threshold:
/// 1/alpha = (1 - e^2/(d+1))^{-2} (d+1-e^2/2)/(d+1-e^2).
/// Requires d+1 > e^2 and d+1 >= a* q.
double alpha_ssm(const PottsParams& params);

struct SsmAlpha {
  double alpha;
  bool extrapolated;  // true when the closed form's preconditions fail
};

/// Largest alpha for which the per-step strong-mixing condition holds with the
/// exact K(a) in place of the worst-case cap e^2: maximizes the per-step bound
/// over the free-neighbor count and solves for equality. Where the closed
/// form's preconditions fail this is a numeric extrapolation of the induction
/// condition, not a stated guarantee, and is flagged as such.
SsmAlpha alpha_ssm_numeric(const PottsParams& params);

/// Per-step quantity of the strong-mixing induction for a child with f_k free
/// neighbors: alpha (d/(d+1)) (K(a)/e) (1-K(a)/(d+1))^{-2} (f_k/d) b^{f_k/d}
/// with b = e ((d+1)/K(a) - 1/2)/(d+1-K(a)). The induction needs this <= d/(d+1).
double ssm_step_bound(const PottsParams& params, double alpha, int f_k);

/// Left side of the weak-mixing per-step condition (alpha q / e) * lambda^2
/// evaluated at the closed-form lambda bound; the induction needs this <= 1.
/// Uses the same K as alpha_wsm so the condition is tight at that alpha.
double wsm_step_bound(const PottsParams& params, double alpha);

/// Closed-form bound on the squared local weight for a vertex with f free
/// neighbors, disagreements at distance > 1:
/// (1/q) (1-K(a)/(d+1))^{-2} K(a)^{(d-f)/d} (e (d+1-K(a)/2)/(d+1-K(a)))^{f/d}.
/// Requires q >= 3, d >= q+2, w = 1 - alpha q/(d+1) with alpha in (0,1].
double lambda_sq_bound_free_count(const PottsParams& params, int f);

/// Sharper bound when the vertex's whole distance-2 neighborhood is free:
/// (e/q) (1 + (K/2)/(d+1-K)) (1 - min(9,q+2)/(d+1))^{-2} with K = q B(0)
/// evaluated at the instance's w (clamped to min(q,13)).
double lambda_sq_bound_all_free(const PottsParams& params);

/// The whole bound family for one parameter set, bundled for reporting.
/// b holds B(0)..B(d), strictly increasing for w in (0,1). The alphas are
/// absent where their preconditions fail.
struct BoundSet {
  std::vector<double> b;
  double m = 0.0;
  double k_of_a = 0.0;
  std::optional<double> alpha_wsm;
  std::optional<double> alpha_ssm;
};

BoundSet bound_set(const PottsParams& params);

}  // namespace pottslab
