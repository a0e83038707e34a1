#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pottslab/checks.hpp"
#include "pottslab/dp.hpp"
#include "pottslab/sweeps.hpp"

using namespace pottslab;

namespace {

RootedTree path(int length) {
  std::vector<int> parent(length + 1, -1);
  for (int v = 1; v <= length; ++v) parent[v] = v - 1;
  return RootedTree(0, std::move(parent));
}

RootedTree star(int leaves) {
  std::vector<int> parent(leaves + 1, 0);
  parent[0] = -1;
  return RootedTree(0, std::move(parent));
}

double slack_of(const CheckReport& rep, const std::string& id_substring) {
  for (const auto& c : rep.detail())
    if (c.id.find(id_substring) != std::string::npos) return c.slack;
  FAIL("no case matching ", id_substring);
  return 0.0;
}

}  // namespace

TEST_CASE("power bound: frozen slack and edge behavior") {
  const CheckReport rep = power_bound_check({0.5});
  CHECK(rep.pass());
  // e * 1.5 - 4
  CHECK(rep.min_slack() == doctest::Approx(0.07742274268856802).epsilon(1e-12));

  const CheckReport tiny = power_bound_check({1e-8});
  CHECK(tiny.pass());
  CHECK(tiny.min_slack() >= 0.0);
  CHECK(tiny.min_slack() < 1e-6);  // both sides approach e

  CHECK(sweep_power_bound(20000).pass());
  CHECK_THROWS_AS(power_bound_check({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(power_bound_check({0.0}), std::invalid_argument);
}

TEST_CASE("bernoulli product minimization") {
  // alpha = 0: both sides are exactly 1
  const CheckReport zero = bernoulli_product_min_check(3, 0.5, 0.0, 60);
  CHECK(zero.pass());
  CHECK(zero.min_slack() <= 1e-12);

  // b = 1: minimum is a point mass, right side 1-alpha
  const CheckReport pm = bernoulli_product_min_check(3, 1.0, 0.6, 50);
  CHECK(pm.pass());
  CHECK(slack_of(pm, "lower-bound") == doctest::Approx(0.0).epsilon(1e-12));

  // 1/b integral: equality at two coordinates loaded to b
  const CheckReport eq = bernoulli_product_min_check(3, 0.5, 0.7, 100);
  CHECK(eq.pass());
  CHECK(slack_of(eq, "lower-bound") == doctest::Approx(0.0).epsilon(1e-10));

  CHECK_THROWS_AS(bernoulli_product_min_check(3, 0.2, 0.5, 100), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_product_min_check(2, 0.4, 0.5, 100), std::invalid_argument);
  CHECK(sweep_bernoulli(3, 100).pass());
  CHECK(sweep_bernoulli(4, 60).pass());
}

TEST_CASE("beta product-sum bound") {
  // extremal vector: all beta = 1/(n+1) at n = 3 gives (3/4)^4 exactly
  const CheckReport ext = check_beta_bound({0.25, 0.25, 0.25});
  CHECK(ext.pass());
  CHECK(slack_of(ext, "n-form") == doctest::Approx(0.0).epsilon(1e-14));

  // zero entries do not change the expression
  auto expr = [](const std::vector<double>& b) {
    double prod = 1.0, sum = 0.0;
    for (double x : b) {
      prod *= 1.0 - x;
      sum += x;
    }
    return prod * sum;
  };
  CHECK(expr({0.3, 0.5}) == expr({0.3, 0.0, 0.5, 0.0}));

  CHECK(check_beta_bound({}).pass());
  CHECK(check_beta_bound({1.0, 1.0}).pass());
  CHECK_THROWS_AS(check_beta_bound({0.5, 1.2}), std::invalid_argument);
  CHECK(sweep_beta_bound(10000, 10, 4242).pass());
}

TEST_CASE("diagonal norm inequality") {
  // single identity block: Cauchy-Schwarz equality
  const CheckReport eq = diag_norm_lemma_check({{1.0, 1.0}}, {{0.3, -0.7}});
  CHECK(eq.pass());
  CHECK(eq.min_slack() == doctest::Approx(0.0).epsilon(1e-14));

  const CheckReport zero = diag_norm_lemma_check({{0.5, 2.0}}, {{0.0, 0.0}});
  CHECK(zero.pass());

  CHECK_THROWS_AS(diag_norm_lemma_check({{1.0, 2.0}}, {{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(diag_norm_lemma_check({}, {}), std::invalid_argument);
  CHECK(sweep_diag_norm(10000, 5, 6, 17).pass());
}

TEST_CASE("useful bound and corollary") {
  // alpha = 1, q = 3, d = 5: w = 0.5, a = 2, left side of (i) is exactly 4
  const CheckReport u = useful_bound_check(PottsParams{3, 0.5, 5}, 1.0);
  CHECK(u.pass());
  CHECK(slack_of(u, "useful-i/") == doctest::Approx(0.07742274268856802).epsilon(1e-10));

  // alpha -> 0: left side of (i) -> 1, large slack
  const CheckReport u0 = useful_bound_check(PottsParams{3, 0.5, 5}, 1e-9);
  CHECK(u0.pass());
  CHECK(slack_of(u0, "useful-i/") > 3.0);

  // boundary probe w = 1: q B(d) = 1
  const CheckReport c0 = corollary_B_check(PottsParams{3, 0.5, 6}, 0.0);
  CHECK(c0.pass());

  // effective constant q B(0) stays below its e-flavored cap as d grows
  constexpr double e = std::numbers::e;
  for (int d : {10, 100, 1000}) {
    const PottsParams p{3, 1.0 - 3.0 / (d + 1), d};
    const double qb0 = 3 * bound_b(0, p);
    CHECK(qb0 < e);
    CHECK(qb0 > 2.0);
    CHECK(corollary_B_check(PottsParams{3, 0.5, d}, 1.0).pass());
  }

  CHECK_THROWS_AS(useful_bound_check(PottsParams{3, 0.5, 5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(useful_bound_check(PottsParams{2, 0.5, 5}, 0.5), std::invalid_argument);
  CHECK(sweep_useful_bound({3, 4}, 12, {0.25, 0.5, 1.0}).pass());
  CHECK(sweep_corollary_B({3, 4}, 12, {0.25, 0.5, 1.0}).pass());
}

TEST_CASE("marginal bounds on explicit instances") {
  // w = 1: marginal is exactly 1/q and B(d) is exactly 1/q
  const CheckReport flat =
      marginal_bound_check_one_step(star(5), BoundaryCondition(6), PottsParams{3, 1.0, 5});
  CHECK(flat.pass());
  CHECK(flat.min_slack() == doctest::Approx(0.0).epsilon(1e-14));

  // star with every leaf fixed to one color
  BoundaryCondition bc(6);
  for (int v = 1; v <= 5; ++v) bc.fix(v, 0);
  const CheckReport one = marginal_bound_check_one_step(star(5), bc, PottsParams{3, 0.5, 5});
  CHECK(one.pass());
  CHECK(one.min_slack() > 0.0);

  // two-step: same star, all neighbors fixed, so ell = d
  const CheckReport two = marginal_bound_check_two_step(star(5), bc, PottsParams{3, 0.5, 5}, 5);
  CHECK(two.pass());

  // adversarial same-color boundary with three fixed neighbors at q = 4
  {
    std::vector<int> parent{-1, 0, 0, 0, 0, 0, 0, 3, 4};  // root, 6 children, 2 grandchildren
    const RootedTree t(0, std::move(parent));
    BoundaryCondition adv(9);
    adv.fix(1, 2);
    adv.fix(2, 2);
    adv.fix(5, 2);
    adv.fix(7, 2);
    adv.fix(8, 2);
    const CheckReport rep = marginal_bound_check_two_step(t, adv, PottsParams{4, 0.8, 6}, 3);
    CHECK(rep.pass());
  }

  CHECK_THROWS_AS(marginal_bound_check_two_step(star(5), bc, PottsParams{3, 0.5, 5}, 3),
                  std::invalid_argument);  // declared ell mismatch
  CHECK_THROWS_AS(marginal_bound_check_two_step(star(5), bc, PottsParams{3, 1.0, 5}, 5),
                  std::invalid_argument);  // w = 1 excluded for the two-step form
  CHECK_THROWS_AS(
      marginal_bound_check_one_step(star(4), BoundaryCondition(5), PottsParams{3, 0.5, 5}),
      std::invalid_argument);  // root degree != d

  CHECK(sweep_marginal_bounds({3, 4}, 7, {0.3, 0.6, 0.9}, 200, 555).pass());
}

TEST_CASE("paired instance generator invariants") {
  Rng rng(31337);
  const PottsParams p{3, 0.6, 5};
  for (int it = 0; it < 200; ++it) {
    PairedInstanceOptions opts;
    opts.min_disagree_depth = 2 + (it % 2);
    opts.min_fixed_depth = 1 + (it % 3 == 0 ? 2 : 0);
    const PairedInstance inst = random_paired_instance(rng, p, opts);
    CHECK(inst.same_support());
    CHECK(!inst.disagreement_set().empty());
    CHECK(inst.disagreement_distance() >= opts.min_disagree_depth);
    for (int v = 0; v < inst.tree.vertex_count(); ++v)
      if (inst.tau.fixed(v)) CHECK(inst.tree.depth(v) >= opts.min_fixed_depth);
    CHECK(inst.tree.respects_degree_bound(p.d));
  }
}

TEST_CASE("lower bound on S along the segment") {
  // w = 1: S = q exactly and the bound is q; equality everywhere
  {
    const RootedTree t = path(3);
    BoundaryCondition tau(4), tau_prime(4);
    tau.fix(3, 0);
    tau_prime.fix(3, 1);
    const PairedInstance inst{t, tau, tau_prime};
    const CheckReport rep = lower_bound_S_check(inst, PottsParams{3, 1.0, 3});
    CHECK(rep.pass());
    CHECK(rep.min_slack() == doctest::Approx(0.0).epsilon(1e-12));
  }

  // all root children fixed: the product over free children is empty
  {
    std::vector<int> parent{-1, 0, 0, 1};  // root, two children, grandchild under 1
    const RootedTree t(0, std::move(parent));
    BoundaryCondition tau(4), tau_prime(4);
    tau.fix(1, 0);
    tau_prime.fix(1, 0);
    tau.fix(2, 1);
    tau_prime.fix(2, 1);
    tau.fix(3, 0);
    tau_prime.fix(3, 2);  // disagreement at depth 2
    const PairedInstance inst{t, tau, tau_prime};
    const CheckReport rep = lower_bound_S_check(inst, PottsParams{3, 0.6, 4});
    CHECK(rep.pass());
  }

  // distance precondition: disagreement adjacent to the root is rejected
  {
    const RootedTree t = path(2);
    BoundaryCondition tau(3), tau_prime(3);
    tau.fix(1, 0);
    tau_prime.fix(1, 1);
    CHECK_THROWS_AS(lower_bound_S_check(PairedInstance{t, tau, tau_prime}, PottsParams{3, 0.6, 2}),
                    std::invalid_argument);
  }

  CHECK(sweep_lower_bound_S(PottsParams{3, 0.6, 6}, 200, 808).pass());
}

TEST_CASE("local weight bounds on instances") {
  // all five neighbors fixed, disagreement below one of them: f = 0
  {
    std::vector<int> parent{-1, 0, 0, 0, 0, 0, 1};
    const RootedTree t(0, std::move(parent));
    BoundaryCondition tau(7), tau_prime(7);
    for (int v = 1; v <= 5; ++v) {
      tau.fix(v, v % 3);
      tau_prime.fix(v, v % 3);
    }
    tau.fix(6, 0);
    tau_prime.fix(6, 1);
    const PottsParams p{3, 0.5, 5};  // alpha = 1: w = 1 - 3/6
    const CheckReport rep = lambda_bound_check(PairedInstance{t, tau, tau_prime}, p, 1.0);
    CHECK(rep.pass());
    CHECK(slack_of(rep, "free-count/f=0") > 0.0);
    CHECK(slack_of(rep, "min-1-over-q") >= -1e-12);
  }

  // w must match 1 - alpha q/(d+1) exactly
  {
    const RootedTree t = path(3);
    BoundaryCondition tau(4), tau_prime(4);
    tau.fix(3, 0);
    tau_prime.fix(3, 1);
    CHECK_THROWS_AS(
        lambda_bound_check(PairedInstance{t, tau, tau_prime}, PottsParams{3, 0.7, 5}, 1.0),
        std::invalid_argument);
  }

  CHECK(sweep_lambda_bounds(PottsParams{3, 0.5, 7}, {0.25, 0.5, 0.75, 1.0}, 120, 99).pass());
}

TEST_CASE("norm bound: trivial, single-child, and error paths") {
  const PottsParams p{3, 0.5, 2};

  // identical boundary conditions: both sides vanish
  {
    const RootedTree t = path(2);
    BoundaryCondition bc(3);
    bc.fix(2, 1);
    const CheckReport rep = verify_norm_bound(PairedInstance{t, bc, bc}, p);
    CHECK(rep.pass());
    CHECK(slack_of(rep, "theorem") >= 0.0);
  }

  // single free child with a depth-2 disagreement
  {
    const RootedTree t = path(2);
    BoundaryCondition tau(3), tau_prime(3);
    tau.fix(2, 0);
    tau_prime.fix(2, 1);
    const CheckReport rep = verify_norm_bound(PairedInstance{t, tau, tau_prime}, p);
    CHECK(rep.pass());
    CHECK(slack_of(rep, "theorem") > 0.0);
    CHECK(slack_of(rep, "quadrature-total") > -1e-8);
  }

  // a fixed neighbor of the root must agree across the two conditions
  {
    const RootedTree t = path(1);
    BoundaryCondition tau(2), tau_prime(2);
    tau.fix(1, 0);
    tau_prime.fix(1, 1);
    CHECK_THROWS_AS(verify_norm_bound(PairedInstance{t, tau, tau_prime}, p),
                    std::invalid_argument);
  }

  // differing supports are rejected
  {
    const RootedTree t = path(2);
    BoundaryCondition tau(3), tau_prime(3);
    tau.fix(2, 0);
    CHECK_THROWS_AS(verify_norm_bound(PairedInstance{t, tau, tau_prime}, p),
                    std::invalid_argument);
  }

  CHECK(sweep_norm_bound(PottsParams{3, 0.5, 6}, {0.3, 0.6, 0.9}, 300, 2718).pass());
}

TEST_CASE("induction step conditions") {
  const PottsParams p{3, 0.5, 29};
  const WsmAlpha wa = alpha_wsm(p);
  CHECK(induction_step_check(p, wa.alpha, MixingMode::kWsm).pass());
  CHECK_FALSE(induction_step_check(p, wa.alpha * 1.02, MixingMode::kWsm).pass());

  const PottsParams ps{3, 0.5, 7};
  const SsmAlpha sa = alpha_ssm_numeric(ps);
  const CheckReport ssm = induction_step_check(ps, sa.alpha, MixingMode::kSsm);
  CHECK(ssm.pass());
  CHECK(ssm.min_slack() <= 1e-12);  // tight at f = d by construction
  CHECK(induction_step_check(ps, sa.alpha, MixingMode::kSsm, 3).pass());
  CHECK_FALSE(induction_step_check(ps, sa.alpha * 1.05, MixingMode::kSsm).pass());

  CHECK_THROWS_AS(induction_step_check(PottsParams{2, 0.5, 10}, 0.5, MixingMode::kWsm),
                  std::invalid_argument);
  CHECK_THROWS_AS(induction_step_check(PottsParams{9, 0.5, 9}, 0.5, MixingMode::kSsm),
                  std::invalid_argument);
  CHECK(sweep_induction_step(p).pass());
}
