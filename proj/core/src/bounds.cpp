#include "pottslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pottslab {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kE2 = kE * kE;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double bound_m(const PottsParams& params) {
  params.validate();
  require(params.w > 0.0, "bound_m: w must be positive");
  const double c = 1.0 + (params.q - 1) * std::pow(params.w, params.d / double(params.q - 1));
  return std::pow(1.0 - (1.0 - params.w) / c, c);
}

double bound_b(int ell, const PottsParams& params) {
  params.validate();
  require(params.w > 0.0, "bound_b: w must be positive");
  require(ell >= 0 && ell <= params.d, "bound_b: ell outside 0..d");
  const double inv_qm1 = 1.0 / double(params.q - 1);
  const double m = bound_m(params);
  return 1.0 / (1.0 + (params.q - 1) * std::pow(params.w, ell * inv_qm1) *
                          std::pow(m, (params.d - ell) * inv_qm1));
}

double bound_k(double a) {
  require(a > 1.0, "bound_k: requires a > 1");
  return kE * (a - 0.5) / (a - 1.0);
}

double k_equals_e2_threshold() { return (kE - 0.5) / (kE - 1.0); }

WsmAlpha alpha_wsm(const PottsParams& params) {
  require(params.q >= 3, "alpha_wsm: requires q >= 3");
  require(params.d >= params.q + 2, "alpha_wsm: requires d >= q+2");
  const int q = params.q;
  const double dp1 = params.d + 1;

  WsmAlpha out;
  out.k_cap = std::min<double>(q, 13.0);
  // B(0) decreases in w, so evaluating at the smallest w in range makes this
  // K valid for every w above the threshold.
  const double w_floor = 1.0 - q / dp1;
  out.k_effective = std::min(q * bound_b(0, params.with_w(w_floor)), out.k_cap);

  const double margin = std::min(9, q + 2) / dp1;
  const auto alpha_for = [&](double k) {
    return 1.0 / ((1.0 + (k / 2.0) / (dp1 - k)) * std::pow(1.0 - margin, -2.0));
  };
  out.alpha = alpha_for(out.k_effective);
  out.alpha_conservative = alpha_for(out.k_cap);
  return out;
}

double alpha_ssm(const PottsParams& params) {
  params.validate();
  const double dp1 = params.d + 1;
  require(dp1 > kE2, "alpha_ssm: requires d+1 > e^2");
  require(dp1 >= k_equals_e2_threshold() * params.q,
          "alpha_ssm: requires d+1 >= (e-1/2)/(e-1) * q");
  return 1.0 / (std::pow(1.0 - kE2 / dp1, -2.0) * ((dp1 - kE2 / 2.0) / (dp1 - kE2)));
}

double ssm_step_bound(const PottsParams& params, double alpha, int f_k) {
  params.validate();
  require(f_k >= 0 && f_k <= params.d, "ssm_step_bound: f_k outside 0..d");
  const double a = params.a();
  require(a > 1.0, "ssm_step_bound: requires (d+1)/q > 1");
  const double ka = bound_k(a);
  const double dp1 = params.d + 1;
  const double d = params.d;
  require(ka < dp1, "ssm_step_bound: K(a) >= d+1, bound vacuous");
  if (f_k == 0) return 0.0;
  const double base = kE * (dp1 / ka - 0.5) / (dp1 - ka);
  return alpha * (d / dp1) * (ka / kE) * std::pow(1.0 - ka / dp1, -2.0) * (f_k / d) *
         std::pow(base, f_k / d);
}

SsmAlpha alpha_ssm_numeric(const PottsParams& params) {
  params.validate();
  const double dp1 = params.d + 1;
  const double a = params.a();
  require(a > 1.0, "alpha_ssm_numeric: requires (d+1)/q > 1");
  require(bound_k(a) < dp1, "alpha_ssm_numeric: K(a) >= d+1, no admissible alpha");

  double g_max = 0.0;
  for (int f = 0; f <= params.d; ++f) g_max = std::max(g_max, ssm_step_bound(params, 1.0, f));
  SsmAlpha out;
  out.alpha = std::min(1.0, (params.d / dp1) / g_max);
  // Anything beyond the closed form (exact K(a) instead of the e^2 worst case,
  // or parameters the closed form does not cover) is flagged.
  const bool closed_form_applies = dp1 > kE2 && dp1 >= k_equals_e2_threshold() * params.q;
  out.extrapolated = !closed_form_applies || out.alpha > alpha_ssm(params) + 1e-15;
  return out;
}

double lambda_sq_bound_free_count(const PottsParams& params, int f) {
  require(params.q >= 3 && params.d >= params.q + 2,
          "lambda_sq_bound_free_count: requires q >= 3 and d >= q+2");
  require(f >= 0 && f <= params.d, "lambda_sq_bound_free_count: f outside 0..d");
  const double ka = bound_k(params.a());
  const double dp1 = params.d + 1;
  const double d = params.d;
  return (1.0 / params.q) * std::pow(1.0 - ka / dp1, -2.0) * std::pow(ka, (d - f) / d) *
         std::pow(kE * (dp1 - ka / 2.0) / (dp1 - ka), f / d);
}

double lambda_sq_bound_all_free(const PottsParams& params) {
  require(params.q >= 3 && params.d >= params.q + 2,
          "lambda_sq_bound_all_free: requires q >= 3 and d >= q+2");
  const double dp1 = params.d + 1;
  const double k = std::min(params.q * bound_b(0, params), std::min<double>(params.q, 13.0));
  const double margin = std::min(9, params.q + 2) / dp1;
  return (kE / params.q) * (1.0 + (k / 2.0) / (dp1 - k)) * std::pow(1.0 - margin, -2.0);
}

double wsm_step_bound(const PottsParams& params, double alpha) {
  const WsmAlpha wa = alpha_wsm(params);
  const double dp1 = params.d + 1;
  const double margin = std::min(9, params.q + 2) / dp1;
  return alpha * (1.0 + (wa.k_effective / 2.0) / (dp1 - wa.k_effective)) *
         std::pow(1.0 - margin, -2.0);
}

BoundSet bound_set(const PottsParams& params) {
  params.validate();
  BoundSet set;
  set.b.reserve(params.d + 1);
  for (int ell = 0; ell <= params.d; ++ell) set.b.push_back(bound_b(ell, params));
  set.m = bound_m(params);
  if (params.a() > 1.0) set.k_of_a = bound_k(params.a());
  if (params.q >= 3 && params.d >= params.q + 2) set.alpha_wsm = alpha_wsm(params).alpha;
  const double dp1 = params.d + 1;
  if (dp1 > kE2 && dp1 >= k_equals_e2_threshold() * params.q) set.alpha_ssm = alpha_ssm(params);
  return set;
}

}  // namespace pottslab
