#include "pottslab/dp.hpp"

#include <cmath>
#include <stdexcept>

namespace pottslab {

Vec RatioVector::marginals() const {
  const double s = sum();
  if (s <= 0.0)
    throw DegenerateInstance("ratio vector sums to zero: contradictory boundary at w = 0");
  Vec p(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) p[i] = entries[i] / s;
  return p;
}

RatioVector RatioVector::basis(int q, int color) {
  RatioVector r{Vec(q, 0.0)};
  r.entries[color] = 1.0;
  return r;
}

RatioVector RatioVector::ones(int q) { return RatioVector{Vec(q, 1.0)}; }

RatioVector SqrtRatioVector::squared() const {
  RatioVector r{Vec(entries.size())};
  for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] * entries[i];
  return r;
}

SqrtRatioVector SqrtRatioVector::of(const RatioVector& r) {
  SqrtRatioVector s{Vec(r.entries.size())};
  for (std::size_t i = 0; i < r.entries.size(); ++i) s.entries[i] = std::sqrt(r.entries[i]);
  return s;
}

namespace {

void check_dp_preconditions(const RootedTree& tree, const BoundaryCondition& bc,
                            const PottsParams& params) {
  params.validate();
  if (bc.vertex_count() != tree.vertex_count())
    throw std::invalid_argument("dp: boundary size mismatch");
  bc.validate(params.q);
  if (!tree.respects_degree_bound(params.d))
    throw std::invalid_argument("dp: tree violates the degree bound (some vertex has more than d children)");
}

// At w = 0 a fixed vertex whose subtree forbids its own color (some child's
// marginal of that color is exactly 1) zeroes the partition function without
// the recursion ever noticing: the fixed vertex's ratio vector is a basis
// vector by convention, so the vanishing weight has to be caught here.
void check_fixed_consistency(const RootedTree& tree, const BoundaryCondition& bc, int v,
                             const std::vector<RatioVector>& out, double w) {
  if (w != 0.0) return;
  for (int child : tree.children(v)) {
    const Vec p = out[child].marginals();
    if (p[bc.color(v)] == 1.0)
      throw DegenerateInstance("dp: fixed vertex's color is forbidden by its subtree at w = 0");
  }
}

// Bottom-up over the precomputed post-order; iterative, so tree height never
// bounds us. Fills out[v] with the ratio vector of v in its own subtree.
void dp_pass(const RootedTree& tree, const BoundaryCondition& bc, const PottsParams& params,
             std::vector<RatioVector>& out) {
  const int q = params.q;
  const double w = params.w;
  out.assign(tree.vertex_count(), RatioVector{});
  for (int v : tree.post_order()) {
    if (bc.fixed(v)) {
      check_fixed_consistency(tree, bc, v, out, w);
      out[v] = RatioVector::basis(q, bc.color(v));
      continue;
    }
    RatioVector r = RatioVector::ones(q);
    for (int child : tree.children(v)) {
      const Vec p = out[child].marginals();
      for (int i = 0; i < q; ++i) r.entries[i] *= 1.0 - (1.0 - w) * p[i];
    }
    out[v] = std::move(r);
  }
}

}  // namespace

std::vector<RatioVector> ratio_vectors_all(const RootedTree& tree, const BoundaryCondition& bc,
                                           const PottsParams& params) {
  check_dp_preconditions(tree, bc, params);
  std::vector<RatioVector> out;
  dp_pass(tree, bc, params, out);
  return out;
}

RatioVector ratio_vector_dp(const RootedTree& tree, const BoundaryCondition& bc,
                            const PottsParams& params, int v) {
  check_dp_preconditions(tree, bc, params);
  if (v < 0 || v >= tree.vertex_count()) throw std::invalid_argument("dp: vertex out of range");

  // Evaluate only the subtree below v: walk post-order restricted to it.
  std::vector<RatioVector> out(tree.vertex_count());
  std::vector<char> wanted(tree.vertex_count(), 0);
  // Mark v's subtree by a forward pass over reversed post-order (parents first).
  const auto& order = tree.post_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    if (u == v || (tree.parent(u) >= 0 && wanted[tree.parent(u)] && u != tree.root()))
      wanted[u] = 1;
  }
  const int q = params.q;
  const double w = params.w;
  for (int u : order) {
    if (!wanted[u]) continue;
    if (bc.fixed(u)) {
      check_fixed_consistency(tree, bc, u, out, w);
      out[u] = RatioVector::basis(q, bc.color(u));
      continue;
    }
    RatioVector r = RatioVector::ones(q);
    for (int child : tree.children(u)) {
      const Vec p = out[child].marginals();
      for (int i = 0; i < q; ++i) r.entries[i] *= 1.0 - (1.0 - w) * p[i];
    }
    out[u] = std::move(r);
  }
  return out[v];
}

Vec root_marginals_dp(const RootedTree& tree, const BoundaryCondition& bc,
                      const PottsParams& params) {
  if (bc.fixed(tree.root()))
    throw std::invalid_argument("root_marginals_dp: root is fixed by the boundary condition");
  return ratio_vector_dp(tree, bc, params, tree.root()).marginals();
}

SqrtRatioVector sqrt_ratio_dp(const RootedTree& tree, const BoundaryCondition& bc,
                              const PottsParams& params, int v) {
  return SqrtRatioVector::of(ratio_vector_dp(tree, bc, params, v));
}

RatioVector complete_tree_iterate(const PottsParams& params, const RatioVector& leaf_ratio,
                                  int height) {
  params.validate();
  if (height < 0) throw std::invalid_argument("complete_tree_iterate: height must be >= 0");
  if (static_cast<int>(leaf_ratio.entries.size()) != params.q)
    throw std::invalid_argument("complete_tree_iterate: leaf ratio has wrong dimension");
  RatioVector r = leaf_ratio;
  const double w = params.w;
  for (int level = 0; level < height; ++level) {
    const Vec p = r.marginals();
    for (int i = 0; i < params.q; ++i) {
      const double factor = 1.0 - (1.0 - w) * p[i];
      double acc = 1.0;
      for (int k = 0; k < params.d; ++k) acc *= factor;
      r.entries[i] = acc;
    }
  }
  return r;
}

}  // namespace pottslab
