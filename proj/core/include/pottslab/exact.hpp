#pragma once

#include "pottslab/params.hpp"
#include "pottslab/tree.hpp"

namespace pottslab {

/// Cap on free vertices for the exhaustive oracle; q^16 colorings is the most
/// we are willing to enumerate.
inline constexpr int kMaxBruteForceFree = 16;

/// Z = sum over colorings extending the boundary of w^(#monochromatic edges),
/// by direct enumeration with compensated summation.
double brute_force_partition(const RootedTree& tree, const BoundaryCondition& bc,
                             const PottsParams& params);

/// P[color of v = c] under the Potts measure, by enumeration. Throws
/// DegenerateInstance when Z = 0 (possible only at w = 0).
double brute_force_marginal(const RootedTree& tree, const BoundaryCondition& bc,
                            const PottsParams& params, int v, int c);

}  // namespace pottslab
