#include "pottslab/checks.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pottslab/dp.hpp"
#include "pottslab/io.hpp"
#include "pottslab/recursion.hpp"

namespace pottslab {

namespace {

constexpr double kE = std::numbers::e;

void require_arg(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Tracks the worst case of one inequality family across a scan.
struct MinSlack {
  double slack = std::numeric_limits<double>::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  bool seen = false;
  void update(double l, double r) {
    seen = true;
    if (r - l < slack) {
      slack = r - l;
      lhs = l;
      rhs = r;
    }
  }
  void emit(CheckReport& rep, const std::string& id, double tol) const {
    if (seen)
      rep.require_le(id, lhs, rhs, tol);
    else
      rep.require_le(id, 0.0, 0.0, tol);  // vacuous scan (no free children)
  }
};

}  // namespace

std::vector<int> PairedInstance::disagreement_set() const {
  std::vector<int> out;
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (tau.fixed(v) && tau_prime.fixed(v) && tau.color(v) != tau_prime.color(v))
      out.push_back(v);
  return out;
}

int PairedInstance::disagreement_distance() const {
  int best = INT_MAX;
  for (int v : disagreement_set()) best = std::min(best, tree.depth(v));
  return best;
}

bool PairedInstance::same_support() const {
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (tau.fixed(v) != tau_prime.fixed(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Marginal bounds
// ---------------------------------------------------------------------------

CheckReport marginal_bound_check_one_step(const RootedTree& tree, const BoundaryCondition& bc,
                                          const PottsParams& params) {
  require_arg(!bc.fixed(tree.root()), "one-step bound: root must be free");
  require_arg(tree.degree(tree.root()) == params.d,
              "one-step bound: root degree must equal d");
  CheckReport rep("prob-basic-one-step");
  const double b_d = bound_b(params.d, params);
  const Vec p = root_marginals_dp(tree, bc, params);
  for (int i = 0; i < params.q; ++i)
    rep.require_le("one-step/color=" + std::to_string(i + 1), p[i], b_d, 1e-12);
  return rep;
}

CheckReport marginal_bound_check_two_step(const RootedTree& tree, const BoundaryCondition& bc,
                                          const PottsParams& params, int ell) {
  require_arg(!bc.fixed(tree.root()), "two-step bound: root must be free");
  require_arg(params.w > 0.0 && params.w < 1.0, "two-step bound: requires w in (0,1)");
  int fixed_neighbors = 0;
  for (int c : tree.children(tree.root()))
    if (bc.fixed(c)) ++fixed_neighbors;
  require_arg(fixed_neighbors == ell,
              "two-step bound: instance has " + std::to_string(fixed_neighbors) +
                  " fixed neighbors, declared " + std::to_string(ell));
  CheckReport rep("prob-basic-two-step");
  const double b_ell = bound_b(ell, params);
  const Vec p = root_marginals_dp(tree, bc, params);
  for (int i = 0; i < params.q; ++i)
    rep.require_le("two-step/ell=" + std::to_string(ell) + "/color=" + std::to_string(i + 1),
                   p[i], b_ell, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// Scalar lemmas
// ---------------------------------------------------------------------------

CheckReport bernoulli_product_min_check(int q, double b, double alpha, int grid) {
  require_arg(q >= 2, "bernoulli check: q >= 2");
  require_arg(b > 0.0 && b <= 1.0, "bernoulli check: b in (0,1]");
  require_arg(alpha >= 0.0 && alpha <= 1.0, "bernoulli check: alpha in [0,1]");
  require_arg(q * b >= 1.0 - 1e-12, "bernoulli check: infeasible, q*b < 1");
  require_arg(grid >= 2, "bernoulli check: grid too coarse");

  // Exhaustive minimization over compositions x_i = k_i/grid, sum k_i = grid,
  // k_i <= cap. Composition count is C(grid+q-1, q-1); keep it sane.
  double combos = 1.0;
  for (int i = 1; i < q; ++i) combos *= double(grid + i) / i;
  require_arg(combos < 5e7, "bernoulli check: grid too fine for this q");

  const int cap = static_cast<int>(std::floor(b * grid + 1e-9));
  require_arg(cap * q >= grid, "bernoulli check: grid cannot represent the simplex under the cap");

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> arg(q, 0), cur(q, 0);
  // Depth-first over coordinates; prefix products reused.
  std::vector<double> prefix(q + 1, 1.0);
  const double step = 1.0 / grid;
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == q - 1) {
      if (remaining > cap) return;
      cur[pos] = remaining;
      const double value = prefix[pos] * (1.0 - alpha * remaining * step);
      if (value < best) {
        best = value;
        arg = cur;
      }
      return;
    }
    const int hi = std::min(cap, remaining);
    for (int k = 0; k <= hi; ++k) {
      cur[pos] = k;
      prefix[pos + 1] = prefix[pos] * (1.0 - alpha * k * step);
      self(self, pos + 1, remaining - k);
    }
  };
  rec(rec, 0, grid);

  CheckReport rep("bernoulli-opt");
  const double rhs = std::pow(1.0 - alpha * b, 1.0 / b);
  rep.require_le("bernoulli/lower-bound", rhs, best, 1e-10);

  // Minimizer structure: every coordinate at 0 or at the cap except at most one.
  int fractional = 0;
  for (int k : arg)
    if (k != 0 && std::abs(k * step - b) > 1.5 * step) ++fractional;
  rep.require_le("bernoulli/minimizer-structure", static_cast<double>(fractional), 1.0, 0.0);
  return rep;
}

CheckReport power_bound_check(const std::vector<double>& x_grid) {
  CheckReport rep("power-bound");
  for (double x : x_grid) {
    require_arg(x > 0.0 && x < 1.0, "power bound: grid point outside (0,1)");
    const double lhs = std::exp(-std::log1p(-x) / x);  // (1-x)^{-1/x}
    const double rhs = kE * (1.0 - x / 2.0) / (1.0 - x);
    rep.require_le("power-bound/x=" + format_double(x), lhs, rhs, 1e-12);
  }
  return rep;
}

CheckReport useful_bound_check(const PottsParams& base, double alpha) {
  require_arg(base.q >= 3, "useful bound: q >= 3");
  require_arg(base.d >= base.q + 1, "useful bound: d >= q+1");
  require_arg(alpha > 0.0 && alpha <= 1.0, "useful bound: alpha in (0,1]");
  const double dp1 = base.d + 1;
  const PottsParams params = base.with_w(1.0 - alpha * base.q / dp1);
  const double a = params.a();
  const std::string tag = "q=" + std::to_string(params.q) + "/d=" + std::to_string(params.d) +
                          "/alpha=" + format_double(alpha);

  CheckReport rep("useful-bound");
  const double lhs1 = std::pow(params.w, -dp1 / params.q);
  rep.require_le("useful-i/" + tag, lhs1, bound_k(a), 1e-12);

  const double lhs2 = std::pow(bound_m(params), -dp1 / params.q);
  const double denom = (a - 1.0) / (a - 0.5) - kE / dp1;
  const double rhs2 = kE * (1.0 + (kE / 2.0) / dp1 / denom);
  rep.require_le("useful-ii/" + tag, lhs2, rhs2, 1e-12);
  return rep;
}

CheckReport corollary_B_check(const PottsParams& base, double alpha) {
  require_arg(base.q >= 3, "corollary B: q >= 3");
  require_arg(base.d >= base.q + 1, "corollary B: d >= q+1");
  require_arg(alpha >= 0.0 && alpha <= 1.0, "corollary B: alpha in [0,1]");
  const double dp1 = base.d + 1;
  const PottsParams params = base.with_w(1.0 - alpha * base.q / dp1);
  const std::string tag = "q=" + std::to_string(params.q) + "/d=" + std::to_string(params.d) +
                          "/alpha=" + format_double(alpha);

  CheckReport rep("corollary-B");
  rep.require_le("corollary-B-i/" + tag, params.q * bound_b(params.d, params),
                 bound_k(params.a()), 1e-12);
  if (params.d >= params.q + 2) {
    // lhs is the observed q*B(0): the effective constant of part (ii).
    rep.require_le("corollary-B-ii/" + tag, params.q * bound_b(0, params),
                   std::min<double>(params.q, 13.0), 1e-12);
  }
  return rep;
}

CheckReport check_beta_bound(const std::vector<double>& betas) {
  for (double b : betas)
    require_arg(b >= 0.0 && b <= 1.0, "beta bound: entries must lie in [0,1]");
  const std::size_t n = betas.size();
  double prod = 1.0, sum = 0.0;
  for (double b : betas) {
    prod *= 1.0 - b;
    sum += b;
  }
  const double expr = prod * sum;
  const double n_form = std::pow(double(n) / double(n + 1), double(n + 1));
  CheckReport rep("beta-bound");
  rep.require_le("beta/n-form/n=" + std::to_string(n), expr, n_form, 1e-12);
  rep.require_le("beta/e-form/n=" + std::to_string(n), expr, 1.0 / kE, 1e-12);
  return rep;
}

CheckReport diag_norm_lemma_check(const std::vector<Vec>& diagonals,
                                  const std::vector<Vec>& vectors) {
  require_arg(diagonals.size() == vectors.size(), "diag norm: need one diagonal per vector");
  require_arg(!diagonals.empty(), "diag norm: empty input");
  const std::size_t q = diagonals.front().size();
  for (std::size_t j = 0; j < diagonals.size(); ++j)
    require_arg(diagonals[j].size() == q && vectors[j].size() == q,
                "diag norm: dimension mismatch");

  Vec acc(q, 0.0);
  double sum_norms = 0.0;
  Vec col_sq(q, 0.0);
  for (std::size_t j = 0; j < diagonals.size(); ++j) {
    for (std::size_t i = 0; i < q; ++i) {
      acc[i] += diagonals[j][i] * vectors[j][i];
      col_sq[i] += diagonals[j][i] * diagonals[j][i];
    }
    sum_norms += norm2_sq(vectors[j]);
  }
  const double rhs = *std::max_element(col_sq.begin(), col_sq.end()) * sum_norms;
  CheckReport rep("diag-norm");
  rep.require_le("diag-norm/d=" + std::to_string(diagonals.size()), norm2_sq(acc), rhs, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// Instance verifiers
// ---------------------------------------------------------------------------

namespace {

struct RootSegmentData {
  SqrtRatioVector x, y;
  LocalWeight lambda;
};

RootSegmentData root_segment(const PairedInstance& inst, const PottsParams& params) {
  const int root = inst.tree.root();
  require_arg(!inst.tau.fixed(root), "instance check: root must be free");
  require_arg(inst.same_support(), "instance check: boundary conditions must share support");
  RootSegmentData rs;
  rs.x = sqrt_ratio_dp(inst.tree, inst.tau, params, root);
  rs.y = sqrt_ratio_dp(inst.tree, inst.tau_prime, params, root);
  rs.lambda = local_weight(Segment{rs.x, rs.y}, params);
  return rs;
}

}  // namespace

CheckReport lower_bound_S_check(const PairedInstance& inst, const PottsParams& params) {
  params.validate();
  require_arg(params.w > 0.0, "S lower bound: requires w > 0");
  require_arg(inst.disagreement_distance() > 1,
              "S lower bound: disagreements must sit at distance > 1 from the root");
  const RootedTree& tree = inst.tree;
  const RootSegmentData rs = root_segment(inst, params);
  const Segment seg{rs.x, rs.y};

  const int q = params.q;
  const double w = params.w;
  int f = 0;
  double product_term = 1.0;
  for (int c : tree.children(tree.root())) {
    if (inst.tau.fixed(c)) continue;
    ++f;
    int ell_j = 0;
    for (int g : tree.children(c))
      if (inst.tau.fixed(g)) ++ell_j;
    const double b = bound_b(ell_j, params);
    product_term *= std::pow(1.0 - (1.0 - w) * b, 1.0 / (q * b));
  }
  const double main_bound = q * std::pow(w, double(params.d - f) / q) * product_term;
  const double cor1 = q * std::pow(w, double(params.d) / q);
  const double b_d = bound_b(params.d, params);
  const double cor2 = q * std::pow(w, double(params.d - f) / q) *
                      std::pow(1.0 - (1.0 - w) * b_d, double(f) / (q * b_d));

  const double s_argmax = s_total(seg.at(rs.lambda.argmax_t));
  double s_min = s_argmax;
  const int grid = 64;
  for (int k = 0; k <= grid; ++k) s_min = std::min(s_min, s_total(seg.at(double(k) / grid)));

  CheckReport rep("S-lower");
  rep.require_le("S-lower/main@argmax", main_bound, s_argmax, 1e-12);
  rep.require_le("S-lower/main@grid", main_bound, s_min, 1e-12);
  rep.require_le("S-lower/corollary-w", cor1, s_min, 1e-12);
  rep.require_le("S-lower/corollary-Bd", cor2, s_min, 1e-12);
  return rep;
}

CheckReport lambda_bound_check(const PairedInstance& inst, const PottsParams& params,
                               double alpha) {
  params.validate();
  require_arg(params.q >= 3 && params.d >= params.q + 2,
              "lambda bound: requires q >= 3 and d >= q+2");
  require_arg(alpha > 0.0 && alpha <= 1.0, "lambda bound: alpha in (0,1]");
  const double w_expected = 1.0 - alpha * params.q / double(params.d + 1);
  require_arg(std::abs(params.w - w_expected) <= 1e-12,
              "lambda bound: w must equal 1 - alpha*q/(d+1)");
  require_arg(inst.disagreement_distance() > 1,
              "lambda bound: disagreements must sit at distance > 1 from the root");

  const RootedTree& tree = inst.tree;
  const RootSegmentData rs = root_segment(inst, params);
  const double lambda_sq = rs.lambda.value * rs.lambda.value;

  CheckReport rep("lambda-bound");
  rep.require_le("lambda/min-1-over-q", 1.0 / params.q, lambda_sq, 1e-12);

  int f = 0;
  for (int c : tree.children(tree.root()))
    if (!inst.tau.fixed(c)) ++f;
  rep.require_le("lambda/free-count/f=" + std::to_string(f), lambda_sq,
                 lambda_sq_bound_free_count(params, f), 1e-10);

  bool two_ball_free = true;
  for (int c : tree.children(tree.root())) {
    if (inst.tau.fixed(c)) two_ball_free = false;
    for (int g : tree.children(c))
      if (inst.tau.fixed(g)) two_ball_free = false;
  }
  if (two_ball_free)
    rep.require_le("lambda/all-free", lambda_sq, lambda_sq_bound_all_free(params), 1e-10);
  return rep;
}

CheckReport verify_norm_bound(const PairedInstance& inst, const PottsParams& params,
                              const NormBoundOptions& opts) {
  params.validate();
  require_arg(params.w > 0.0, "norm bound: requires w > 0");
  require_arg(opts.simpson_panels >= 2 && opts.simpson_panels % 2 == 0,
              "norm bound: Simpson needs an even panel count");
  require_arg(opts.link_grid >= 1 && opts.simpson_panels % opts.link_grid == 0,
              "norm bound: link grid must divide the panel count");
  require_arg(inst.same_support(), "norm bound: boundary conditions must share support");
  const RootedTree& tree = inst.tree;
  const int root = tree.root();
  require_arg(!inst.tau.fixed(root), "norm bound: root must be free");
  for (int c : tree.children(root))
    if (inst.tau.fixed(c) && inst.tau.color(c) != inst.tau_prime.color(c))
      throw std::invalid_argument("norm bound: fixed neighbors of the root must agree");

  const int q = params.q;
  const double w = params.w;

  const Vec xv = sqrt_ratio_dp(tree, inst.tau, params, root).entries;
  const Vec yv = sqrt_ratio_dp(tree, inst.tau_prime, params, root).entries;
  const double lhs_sq = norm2_sq(sub(xv, yv));

  struct Child {
    Vec x, y, delta;
    double lambda = 0.0;
  };
  std::vector<Child> kids;
  for (int c : tree.children(root)) {
    if (inst.tau.fixed(c)) continue;
    Child ch;
    ch.x = sqrt_ratio_dp(tree, inst.tau, params, c).entries;
    ch.y = sqrt_ratio_dp(tree, inst.tau_prime, params, c).entries;
    ch.delta = sub(ch.x, ch.y);
    ch.lambda = local_weight(Segment{SqrtRatioVector{ch.x}, SqrtRatioVector{ch.y}}, params).value;
    kids.push_back(std::move(ch));
  }
  const int m = static_cast<int>(kids.size());

  // Children's weighted squared distances: the right side of everything.
  double weighted_sum = 0.0;
  for (const Child& ch : kids) weighted_sum += ch.lambda * ch.lambda * norm2_sq(ch.delta);
  const double rhs_theorem = (1.0 - w) / kE * weighted_sum;

  // Reduction to free children: the fixed ones contribute equal factors.
  double l1 = 0.0;
  {
    Vec px(q, 1.0), py(q, 1.0);
    for (const Child& ch : kids) {
      const Vec fx = apply_f(ch.x, params);
      const Vec fy = apply_f(ch.y, params);
      for (int i = 0; i < q; ++i) {
        px[i] *= fx[i];
        py[i] *= fy[i];
      }
    }
    l1 = norm2_sq(sub(px, py));
  }

  // Reusable buffers for the t-scan.
  std::vector<Vec> z(m, Vec(q)), f_val(m, Vec(q)), dfd(m, Vec(q)), alpha_v(m, Vec(q)),
      xk(m, Vec(q)), dk(m, Vec(q));
  std::vector<double> s_val(m);
  Vec all_prod(q), deriv(q);

  MinSlack link_integrand, link_diag, link_lambda_diag, link_projector, link_beta_n, link_beta_e,
      link_maxterm;

  // Integrand ||d/dt prod_k F(Z_k(t))||^2, with the chain inequalities checked
  // at the coarser link grid.
  auto eval = [&](double t, bool check_links) -> double {
    if (m == 0) return 0.0;
    std::fill(all_prod.begin(), all_prod.end(), 1.0);
    for (int k = 0; k < m; ++k) {
      const Child& ch = kids[k];
      double s = 0.0;
      for (int i = 0; i < q; ++i) {
        z[k][i] = t * ch.x[i] + (1.0 - t) * ch.y[i];
        s += z[k][i] * z[k][i];
      }
      s_val[k] = s;
      const double sqrt_s = std::sqrt(s);
      double along = 0.0;
      for (int i = 0; i < q; ++i) along += z[k][i] / sqrt_s * ch.delta[i];
      for (int i = 0; i < q; ++i) {
        const double fi = std::sqrt(1.0 + (w - 1.0) * z[k][i] * z[k][i] / s);
        f_val[k][i] = fi;
        all_prod[i] *= fi;
        alpha_v[k][i] = ch.delta[i] - z[k][i] / sqrt_s * along;
        dfd[k][i] = (w - 1.0) / fi * z[k][i] / s * alpha_v[k][i];
      }
    }
    for (int i = 0; i < q; ++i) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += dfd[k][i] * all_prod[i] / f_val[k][i];
      deriv[i] = acc;
    }
    const double h = norm2_sq(deriv);
    if (!check_links) return h;

    // Product-sum bound per color, and the derived cap on the max term.
    double maxterm = 0.0;
    const double n_form = std::pow(double(m) / double(m + 1), double(m + 1));
    for (int i = 0; i < q; ++i) {
      const double prod_sq = all_prod[i] * all_prod[i];
      double beta_sum = 0.0;
      for (int k = 0; k < m; ++k) beta_sum += (1.0 - w) * z[k][i] * z[k][i] / s_val[k];
      const double expr = prod_sq * beta_sum;
      link_beta_n.update(expr, n_form);
      link_beta_e.update(expr, 1.0 / kE);
      maxterm = std::max(maxterm, (1.0 - w) * expr);
    }
    link_maxterm.update(maxterm, (1.0 - w) / kE);
    link_integrand.update(h, maxterm * weighted_sum);

    // Diagonal-norm inequality on the factored Jacobian data.
    Vec col_sq(q, 0.0), acc_vec(q, 0.0);
    double sum_xk = 0.0;
    for (int k = 0; k < m; ++k) {
      const double sqrt_s = std::sqrt(s_val[k]);
      for (int i = 0; i < q; ++i) {
        const double s_i = s_val[k] + (w - 1.0) * z[k][i] * z[k][i];
        xk[k][i] = sqrt_s / s_i * alpha_v[k][i];
        dk[k][i] = all_prod[i] * (w - 1.0) * z[k][i] / sqrt_s;
        acc_vec[i] += dk[k][i] * xk[k][i];
        col_sq[i] += dk[k][i] * dk[k][i];
      }
      const double xk_sq = norm2_sq(xk[k]);
      sum_xk += xk_sq;
      const double a_sq = norm2_sq(alpha_v[k]);
      link_lambda_diag.update(xk_sq, kids[k].lambda * kids[k].lambda * a_sq);
      link_projector.update(a_sq, norm2_sq(kids[k].delta));
    }
    link_diag.update(norm2_sq(acc_vec),
                     *std::max_element(col_sq.begin(), col_sq.end()) * sum_xk);
    return h;
  };

  // Composite Simpson over [0,1]; links every (panels/link_grid)-th node.
  const int n = opts.simpson_panels;
  const int link_stride = n / opts.link_grid;
  double simpson = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double t = double(j) / n;
    const double h = eval(t, j % link_stride == 0);
    const double coef = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    simpson += coef * h;
  }
  simpson /= 3.0 * n;

  CheckReport rep("norm-bound");
  rep.require_le("norm/theorem", lhs_sq, rhs_theorem, opts.tol_theorem);
  rep.require_le("norm/reduce-to-free", lhs_sq, l1, opts.tol_exact);
  rep.require_le("norm/jensen-quadrature", l1, simpson, opts.tol_quadrature);
  rep.require_le("norm/quadrature-total", lhs_sq, simpson, opts.tol_quadrature);
  link_integrand.emit(rep, "norm/integrand-bound", opts.tol_theorem);
  link_diag.emit(rep, "norm/diag-norm", opts.tol_exact);
  link_lambda_diag.emit(rep, "norm/lambda-diag", opts.tol_theorem);
  link_projector.emit(rep, "norm/projector", opts.tol_exact);
  link_beta_n.emit(rep, "norm/beta-n", opts.tol_exact);
  link_beta_e.emit(rep, "norm/beta-e", opts.tol_exact);
  link_maxterm.emit(rep, "norm/maxterm", opts.tol_exact);
  return rep;
}

CheckReport induction_step_check(const PottsParams& params, double alpha, MixingMode mode,
                                 int f_k) {
  CheckReport rep("induction-step");
  if (mode == MixingMode::kWsm) {
    require_arg(params.q >= 3 && params.d >= params.q + 2,
                "induction step (wsm): requires q >= 3 and d >= q+2");
    rep.require_le("induction/wsm/alpha=" + format_double(alpha),
                   wsm_step_bound(params, alpha), 1.0, 1e-12);
    return rep;
  }
  require_arg(params.a() >= k_equals_e2_threshold(),
              "induction step (ssm): requires (d+1)/q >= (e-1/2)/(e-1)");
  const double target = double(params.d) / double(params.d + 1);
  const int lo = (f_k < 0) ? 0 : f_k;
  const int hi = (f_k < 0) ? params.d : f_k;
  for (int f = lo; f <= hi; ++f)
    rep.require_le("induction/ssm/f=" + std::to_string(f), ssm_step_bound(params, alpha, f),
                   target, 1e-12);
  if (f_k < 0) {
    // The per-step bound is maximized at a full set of free neighbors.
    const double at_d = ssm_step_bound(params, alpha, params.d);
    for (int f = 0; f <= params.d; ++f)
      rep.require_le("induction/ssm-argmax/f=" + std::to_string(f),
                     ssm_step_bound(params, alpha, f), at_d, 1e-12);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Seeded instance generators
// ---------------------------------------------------------------------------

PairedInstance random_paired_instance(Rng& rng, const PottsParams& params,
                                      const PairedInstanceOptions& opts) {
  require_arg(opts.min_vertices >= 2 && opts.max_vertices >= opts.min_vertices,
              "random_paired_instance: bad vertex range");
  // Disagreeing vertices are fixed vertices, so the forced one must clear
  // both depth floors.
  const int spine = std::max({opts.min_disagree_depth, opts.min_fixed_depth, 1});
  const int n = std::max(spine + 1, opts.min_vertices +
                                        rng.next_int(opts.max_vertices - opts.min_vertices + 1));

  // Spine guarantees a vertex at the disagreement depth; the rest attach at
  // random wherever capacity remains.
  std::vector<int> parent(n, -1);
  std::vector<int> child_count(n, 0);
  std::vector<int> open;
  for (int v = 1; v <= spine; ++v) {
    parent[v] = v - 1;
    ++child_count[v - 1];
  }
  for (int v = 0; v <= spine; ++v)
    if (child_count[v] < params.d) open.push_back(v);
  for (int v = spine + 1; v < n; ++v) {
    const int pick = rng.next_int(static_cast<int>(open.size()));
    const int p = open[pick];
    parent[v] = p;
    if (++child_count[p] == params.d) open.erase(open.begin() + pick);
    open.push_back(v);
  }
  RootedTree tree(0, std::move(parent));

  BoundaryCondition tau(n), tau_prime(n);
  auto recolor = [&](int c) {  // uniform among the other q-1 colors
    const int shift = 1 + rng.next_int(params.q - 1);
    return (c + shift) % params.q;
  };
  for (int v = 1; v < n; ++v) {
    const bool spine_interior = v < spine;  // keep the path to the forced disagreement free
    if (spine_interior || tree.depth(v) < opts.min_fixed_depth) continue;
    const bool force_disagreement = v == spine;
    if (!force_disagreement && !rng.next_bool(opts.fix_prob)) continue;
    const int c = rng.next_int(params.q);
    tau.fix(v, c);
    const bool may_disagree = tree.depth(v) >= opts.min_disagree_depth;
    if (may_disagree && (force_disagreement || rng.next_bool(0.5)))
      tau_prime.fix(v, recolor(c));
    else
      tau_prime.fix(v, c);
  }
  return PairedInstance{std::move(tree), std::move(tau), std::move(tau_prime)};
}

}  // namespace pottslab
