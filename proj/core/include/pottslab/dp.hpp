#pragma once

#include <vector>

#include "pottslab/params.hpp"
#include "pottslab/tree.hpp"
#include "pottslab/vec.hpp"

namespace pottslab {

/// Per-color ratio vector at a vertex: entry i is the partition function of
/// the vertex's subtree with the vertex forced to color i, divided by the
/// partition function with the vertex deleted. Entries lie in [w^children, 1]
/// for a free vertex and equal a standard basis vector for a fixed one.
struct RatioVector {
  Vec entries;

  double sum() const { return vec_sum(entries); }

  /// Normalizes to the marginal distribution; throws DegenerateInstance when
  /// the entries sum to zero (contradictory boundary at w = 0).
  Vec marginals() const;

  static RatioVector basis(int q, int color);
  static RatioVector ones(int q);
};

/// Entrywise square root of a ratio vector; the coordinates the contraction
/// analysis works in.
struct SqrtRatioVector {
  Vec entries;

  RatioVector squared() const;
  static SqrtRatioVector of(const RatioVector& r);
};

/// Ratio vector of v within the subtree rooted at v, bottom-up over an
/// explicit stack (tree height does not bound recursion depth). Requires v
/// free (a fixed v yields its basis vector) and the degree bound to hold.
RatioVector ratio_vector_dp(const RootedTree& tree, const BoundaryCondition& bc,
                            const PottsParams& params, int v);

/// One bottom-up pass producing every vertex's ratio vector in its own subtree.
std::vector<RatioVector> ratio_vectors_all(const RootedTree& tree, const BoundaryCondition& bc,
                                           const PottsParams& params);

/// Root marginal distribution; requires the root free.
Vec root_marginals_dp(const RootedTree& tree, const BoundaryCondition& bc,
                      const PottsParams& params);

SqrtRatioVector sqrt_ratio_dp(const RootedTree& tree, const BoundaryCondition& bc,
                              const PottsParams& params, int v);

/// Root ratio vector of the complete d-ary tree of the given height whose
/// depth-`height` vertices all carry leaf_ratio. Level symmetry collapses the
/// tree recursion to iterating one vector map, so cost is linear in height
/// rather than in the (exponential) tree size.
RatioVector complete_tree_iterate(const PottsParams& params, const RatioVector& leaf_ratio,
                                  int height);

}  // namespace pottslab
