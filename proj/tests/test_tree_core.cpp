#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pottslab/dp.hpp"
#include "pottslab/exact.hpp"
#include "pottslab/rng.hpp"
#include "pottslab/sweeps.hpp"
#include "pottslab/tree.hpp"

using namespace pottslab;

namespace {

RootedTree path(int length) {  // length edges, root at one end
  std::vector<int> parent(length + 1, -1);
  for (int v = 1; v <= length; ++v) parent[v] = v - 1;
  return RootedTree(0, std::move(parent));
}

RootedTree star(int leaves) {
  std::vector<int> parent(leaves + 1, 0);
  parent[0] = -1;
  return RootedTree(0, std::move(parent));
}

}  // namespace

TEST_CASE("rooted tree validation") {
  CHECK_THROWS_AS(RootedTree(0, {0}), std::invalid_argument);        // root with a parent
  CHECK_THROWS_AS(RootedTree(0, {-1, 2, 1}), std::invalid_argument);  // 1<->2 cycle off the root
  CHECK_THROWS_AS(RootedTree::from_edges(3, 0, {{0, 1}}), std::invalid_argument);  // too few edges
  CHECK_THROWS_AS(RootedTree::from_edges(3, 0, {{0, 1}, {1, 0}}), std::invalid_argument);

  const RootedTree t = RootedTree::from_edges(4, 1, {{1, 0}, {1, 2}, {2, 3}});
  CHECK(t.root() == 1);
  CHECK(t.depth(3) == 2);
  CHECK(t.degree(1) == 2);
  CHECK(t.degree(2) == 2);
  CHECK(t.height() == 2);
  CHECK(t.vertices_at_depth(1).size() == 2);

  const RootedTree c = RootedTree::complete(3, 2);
  CHECK(c.vertex_count() == 13);
  CHECK(c.respects_degree_bound(3));
  CHECK_FALSE(c.respects_degree_bound(2));
}

TEST_CASE("brute force partition function") {
  const PottsParams p3{3, 0.5, 2};

  // isolated free vertex: q colorings of weight 1
  CHECK(brute_force_partition(RootedTree::single_vertex(), BoundaryCondition(1), p3) ==
        doctest::Approx(3.0).epsilon(1e-15));

  // one edge, leaf fixed: w + 1 + 1
  const RootedTree edge = path(1);
  BoundaryCondition bc(2);
  bc.fix(1, 0);
  CHECK(brute_force_partition(edge, bc, p3) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(brute_force_marginal(edge, bc, p3, 0, 0) == doctest::Approx(0.2).epsilon(1e-14));

  // w = 1: every coloring has weight one
  const RootedTree t = RootedTree::from_edges(5, 0, {{0, 1}, {0, 2}, {2, 3}, {2, 4}});
  CHECK(brute_force_partition(t, BoundaryCondition(5), PottsParams{3, 1.0, 3}) ==
        doctest::Approx(std::pow(3.0, 5)).epsilon(1e-14));

  // isolated free root, q = 4: uniform marginal
  CHECK(brute_force_marginal(RootedTree::single_vertex(), BoundaryCondition(1),
                             PottsParams{4, 0.7, 2}, 0, 2) == doctest::Approx(0.25));

  // marginals of any free vertex sum to one
  double total = 0.0;
  for (int c = 0; c < 3; ++c) total += brute_force_marginal(t, BoundaryCondition(5),
                                                            PottsParams{3, 0.4, 3}, 2, c);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("brute force guards") {
  const RootedTree t = path(17);  // 18 vertices, all free
  CHECK_THROWS_AS(brute_force_partition(t, BoundaryCondition(18), PottsParams{3, 0.5, 2}),
                  std::invalid_argument);
  BoundaryCondition bad(2);
  bad.fix(1, 5);
  CHECK_THROWS_AS(brute_force_partition(path(1), bad, PottsParams{3, 0.5, 2}),
                  std::invalid_argument);
  BoundaryCondition fixed_root(2);
  fixed_root.fix(0, 1);
  CHECK_THROWS_AS(brute_force_marginal(path(1), fixed_root, PottsParams{3, 0.5, 2}, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("ratio vector dp on small instances") {
  const PottsParams p{3, 0.5, 4};

  // leaf: empty product
  const RatioVector leaf = ratio_vector_dp(path(1), BoundaryCondition(2), p, 1);
  for (double e : leaf.entries) CHECK(e == 1.0);

  // root with one leaf child fixed to the first color
  BoundaryCondition bc(2);
  bc.fix(1, 0);
  const RatioVector r = ratio_vector_dp(path(1), bc, p, 0);
  CHECK(r.entries[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.entries[1] == 1.0);
  CHECK(r.entries[2] == 1.0);

  // w = 1 washes out the boundary entirely
  const RatioVector r1 = ratio_vector_dp(path(1), bc, PottsParams{3, 1.0, 4}, 0);
  for (double e : r1.entries) CHECK(e == 1.0);

  // fixed vertex: basis vector by convention
  const RatioVector rf = ratio_vector_dp(path(1), bc, p, 1);
  CHECK(rf.entries == Vec{1.0, 0.0, 0.0});

  // degree bound violations are rejected
  CHECK_THROWS_AS(ratio_vector_dp(star(4), BoundaryCondition(5), PottsParams{3, 0.5, 3}, 0),
                  std::invalid_argument);
}

TEST_CASE("root marginals: frozen small-instance values") {
  // isolated root
  const Vec u = root_marginals_dp(RootedTree::single_vertex(), BoundaryCondition(1),
                                  PottsParams{3, 0.5, 2});
  for (double x : u) CHECK(x == doctest::Approx(1.0 / 3).epsilon(1e-15));

  // star with 4 leaves all fixed to the first color, q=3, w=0.5:
  // ratios (w^4, 1, 1), marginals (0.0625, 1, 1)/2.0625
  const RootedTree s = star(4);
  BoundaryCondition bc(5);
  for (int v = 1; v <= 4; ++v) bc.fix(v, 0);
  const Vec m = root_marginals_dp(s, bc, PottsParams{3, 0.5, 4});
  CHECK(m[0] == doctest::Approx(0.030303030303030304).epsilon(1e-13));
  CHECK(m[1] == doctest::Approx(0.48484848484848486).epsilon(1e-13));
  CHECK(m[0] + m[1] + m[2] == doctest::Approx(1.0).epsilon(1e-15));

  // path of length 2, far endpoint fixed; enumeration gives 0.36 for its color
  const RootedTree p2 = path(2);
  BoundaryCondition bp(3);
  bp.fix(2, 0);
  const Vec mp = root_marginals_dp(p2, bp, PottsParams{3, 0.5, 2});
  CHECK(mp[0] == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(brute_force_marginal(p2, bp, PottsParams{3, 0.5, 2}, 0, 0) ==
        doctest::Approx(0.36).epsilon(1e-14));

  BoundaryCondition fixed_root(3);
  fixed_root.fix(0, 0);
  CHECK_THROWS_AS(root_marginals_dp(p2, fixed_root, PottsParams{3, 0.5, 2}),
                  std::invalid_argument);
}

TEST_CASE("degenerate boundaries at w = 0 are detected by both engines") {
  // two children of a free root fixed to the two colors of q=2: no proper
  // coloring of the root exists
  const RootedTree s = star(2);
  BoundaryCondition bc(3);
  bc.fix(1, 0);
  bc.fix(2, 1);
  const PottsParams p{2, 0.0, 2};
  CHECK(brute_force_partition(s, bc, p) == 0.0);
  CHECK_THROWS_AS(root_marginals_dp(s, bc, p), DegenerateInstance);

  // fixed vertex whose only child is effectively pinned to the same color:
  // root - a(fixed 0) - b - c(fixed 1); at q=2, w=0 vertex b must take color 0
  const RootedTree chain = path(3);
  BoundaryCondition bcc(4);
  bcc.fix(1, 0);
  bcc.fix(3, 1);
  CHECK(brute_force_partition(chain, bcc, p) == 0.0);
  CHECK_THROWS_AS(root_marginals_dp(chain, bcc, p), DegenerateInstance);
}

TEST_CASE("ratio entries stay within [w^children, 1]") {
  Rng rng(2024);
  for (int it = 0; it < 50; ++it) {
    const RootedTree t = random_tree(rng, 2 + rng.next_int(10), 3);
    const double w = rng.next_range(0.05, 1.0);
    const PottsParams p{3, w, 3};
    const BoundaryCondition bc = random_boundary(rng, t, p.q, 0.3);
    const auto ratios = ratio_vectors_all(t, bc, p);
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (bc.fixed(v)) continue;
      const double lo = std::pow(w, t.child_count(v));
      for (double e : ratios[v].entries) {
        CHECK(e >= lo - 1e-12);
        CHECK(e <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("color permutation equivariance of root marginals") {
  Rng rng(99);
  const int q = 3;
  const int perm[3] = {2, 0, 1};
  for (int it = 0; it < 30; ++it) {
    const RootedTree t = random_tree(rng, 3 + rng.next_int(8), 3);
    const PottsParams p{q, rng.next_range(0.1, 1.0), 3};
    const BoundaryCondition bc = random_boundary(rng, t, q, 0.4);
    BoundaryCondition permuted(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v)
      if (bc.fixed(v)) permuted.fix(v, perm[bc.color(v)]);
    const Vec m = root_marginals_dp(t, bc, p);
    const Vec mp = root_marginals_dp(t, permuted, p);
    for (int i = 0; i < q; ++i) CHECK(mp[perm[i]] == doctest::Approx(m[i]).epsilon(1e-12));
  }
}

TEST_CASE("complete tree iteration matches the explicit dynamic program") {
  // height 0 is the identity
  const RatioVector leaf{Vec{0.3, 0.8, 1.0}};
  const RatioVector same = complete_tree_iterate(PottsParams{3, 0.4, 2}, leaf, 0);
  CHECK(same.entries == leaf.entries);

  // w = 1 collapses to the all-ones vector after one level
  const RatioVector ones = complete_tree_iterate(PottsParams{3, 1.0, 2}, leaf, 1);
  for (double e : ones.entries) CHECK(e == 1.0);

  for (int q : {2, 3}) {
    for (int d : {2, 3}) {
      for (int h = 1; h <= 4; ++h) {
        const PottsParams p{q, 0.5, d};
        const RootedTree t = RootedTree::complete(d, h);

        // fixed level: leaves carry a basis vector
        BoundaryCondition bc(t.vertex_count());
        for (int v : t.vertices_at_depth(h)) bc.fix(v, 0);
        const RatioVector explicit_fixed = ratio_vector_dp(t, bc, p, 0);
        const RatioVector iterated_fixed =
            complete_tree_iterate(p, RatioVector::basis(q, 0), h);
        for (int i = 0; i < q; ++i)
          CHECK(iterated_fixed.entries[i] ==
                doctest::Approx(explicit_fixed.entries[i]).epsilon(1e-10));

        // free level: leaves carry the all-ones ratio
        const RatioVector explicit_free =
            ratio_vector_dp(t, BoundaryCondition(t.vertex_count()), p, 0);
        const RatioVector iterated_free = complete_tree_iterate(p, RatioVector::ones(q), h);
        for (int i = 0; i < q; ++i)
          CHECK(iterated_free.entries[i] ==
                doctest::Approx(explicit_free.entries[i]).epsilon(1e-10));
      }
    }
  }

  CHECK_THROWS_AS(complete_tree_iterate(PottsParams{3, 0.5, 2}, leaf, -1), std::invalid_argument);
  CHECK_THROWS_AS(complete_tree_iterate(PottsParams{4, 0.5, 2}, leaf, 1), std::invalid_argument);
}

TEST_CASE("random tree generator respects the child cap and is reproducible") {
  Rng a(7), b(7);
  const RootedTree ta = random_tree(a, 40, 3);
  const RootedTree tb = random_tree(b, 40, 3);
  CHECK(ta.vertex_count() == tb.vertex_count());
  for (int v = 0; v < 40; ++v) {
    CHECK(ta.parent(v) == tb.parent(v));
    CHECK(ta.child_count(v) <= 3);
  }
}

TEST_CASE("dp handles trees far deeper than any call stack") {
  const int depth = 200000;
  std::vector<int> parent(depth + 1, -1);
  for (int v = 1; v <= depth; ++v) parent[v] = v - 1;
  const RootedTree deep(0, std::move(parent));
  BoundaryCondition bc(depth + 1);
  bc.fix(depth, 0);
  const Vec m = root_marginals_dp(deep, bc, PottsParams{3, 0.5, 2});
  CHECK(vec_sum(m) == doctest::Approx(1.0).epsilon(1e-12));
  // the boundary is far away: the root is essentially uniform
  for (double p : m) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("oracle equivalence mini-sweep") {
  const CheckReport rep =
      sweep_oracle_equivalence(60, 9, 4, {2, 3, 4}, {0.0, 0.1, 0.5, 0.9, 1.0}, 123);
  CHECK(rep.pass());
  CHECK(rep.cases() > 3000);
}

TEST_CASE("instance JSON loader") {
  const char* doc = R"({
    "q": 3, "w": 0.5, "root": 0,
    "edges": [[0,1],[0,2],[2,3]],
    "boundary": {"1": 2, "3": 1}
  })";
  const Instance inst = load_instance_json(doc);
  CHECK(inst.params.q == 3);
  CHECK(inst.params.w == 0.5);
  CHECK(inst.params.d == 2);  // derived: max child count
  CHECK(inst.tree.vertex_count() == 4);
  CHECK(inst.boundary.color(1) == 1);  // colors 1-based in files
  CHECK(inst.boundary.color(3) == 0);
  CHECK_FALSE(inst.boundary.fixed(0));

  CHECK_THROWS_AS(load_instance_json("{\"q\":3}"), std::invalid_argument);
  CHECK_THROWS_AS(load_instance_json(R"({"q":3,"w":0.5,"root":0,"edges":[[0,1],[1,0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      load_instance_json(R"({"q":3,"w":0.5,"root":0,"edges":[[0,1]],"boundary":{"1":4}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      load_instance_json(R"({"q":3,"w":0.5,"root":0,"edges":[[0,1]],"boundary":{"1":0}})"),
      std::invalid_argument);
}
