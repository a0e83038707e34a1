#pragma once

#include "pottslab/params.hpp"
#include "pottslab/recursion.hpp"

namespace pottslab {

struct SearchConfig {
  int grid_points = 1024;   // uniform t-grid per color before refinement
  double t_tol = 1e-10;     // golden-section interval width target
};

struct LocalWeight {
  double value;     // lambda = max over colors i and t of sqrt(S(Z(t)))/S_i(Z(t))
  double argmax_t;
  int argmax_i;
};

/// Maximizes sqrt(S(Z(t)))/S_i(Z(t)) over t in [0,1] and colors i by dense
/// grid evaluation followed by golden-section refinement around the best cell
/// of each color. The objective is smooth on a compact interval, so the grid
/// bounds the risk of a missed interior maximum. Requires both endpoints
/// strictly positive with entries <= 1 and w in (0,1]. lambda^2 >= 1/q always
/// holds on such input since S(Z(t)) <= q.
LocalWeight local_weight(const Segment& seg, const PottsParams& params,
                         const SearchConfig& search = SearchConfig{});

}  // namespace pottslab
