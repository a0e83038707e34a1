#pragma once

#include <stdexcept>
#include <string>

namespace pottslab {

/// Model parameters: q colors, edge interaction w in [0,1], and the branching
/// bound d (trees have maximum degree d+1, the root at most d).
struct PottsParams {
  int q = 3;
  double w = 0.5;
  int d = 2;

  /// a = (d+1)/q, the degree-to-color ratio the contraction bounds are stated in.
  double a() const { return static_cast<double>(d + 1) / static_cast<double>(q); }

  void validate() const {
    if (q < 2) throw std::invalid_argument("PottsParams: q must be >= 2, got " + std::to_string(q));
    if (d < 2) throw std::invalid_argument("PottsParams: d must be >= 2, got " + std::to_string(d));
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("PottsParams: w must lie in [0,1], got " + std::to_string(w));
  }

  PottsParams with_w(double new_w) const {
    PottsParams p = *this;
    p.w = new_w;
    return p;
  }
};

/// Thrown when a boundary condition at w = 0 forbids every coloring, so the
/// partition function vanishes and conditional marginals do not exist.
struct DegenerateInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pottslab
