#pragma once

#include <vector>

#include "pottslab/dp.hpp"
#include "pottslab/params.hpp"
#include "pottslab/vec.hpp"

namespace pottslab {

/// S(x) = sum_k x_k^2.
double s_total(const Vec& x);

/// S_i(x) = S(x) + (w-1) x_i^2. Satisfies S_i >= w*S >= 0 for w in [0,1].
double s_color(const Vec& x, int i, double w);

/// The one-step square-root-ratio map, F(x)_i = sqrt(S_i(x)/S(x)).
/// Defined for x != 0 with nonnegative entries; scale invariant; outputs lie
/// in [sqrt(w), 1] entrywise.
Vec apply_f(const Vec& x, const PottsParams& params);

/// Jacobian of F in factored form: DF(x) = diag(diag_part) (I - pi pi^T) with
/// pi the unit vector x/sqrt(S(x)). Kept factored so products cost O(q).
struct JacobianFactors {
  Vec diag_part;  // (w-1)/F(x)_i * x_i/S(x)
  Vec projector;  // pi, Euclidean norm 1

  Vec apply(const Vec& v) const;
  std::vector<Vec> dense() const;
};

/// Requires strictly positive x (the factored form divides by F(x)_i, which
/// can vanish on the boundary at w = 0).
JacobianFactors jacobian_f(const Vec& x, const PottsParams& params);

/// Line segment between two square-root-ratio vectors: Z(t) = t x + (1-t) y.
struct Segment {
  SqrtRatioVector x;
  SqrtRatioVector y;

  Vec at(double t) const;
  int dimension() const { return static_cast<int>(x.entries.size()); }
};

struct SegmentStats {
  double s;       // S(Z(t))
  Vec s_color;    // S_i(Z(t)) per color
  Vec f_of_z;     // F(Z(t))
};

/// Consistent evaluation of S, all S_i, and F along a segment; t in [0,1].
SegmentStats segment_s_stats(const Segment& seg, const PottsParams& params, double t);

/// Central finite-difference Jacobian of apply_f, the independent oracle the
/// analytic factorization is tested against.
std::vector<Vec> finite_difference_jacobian(const Vec& x, const PottsParams& params, double step);

}  // namespace pottslab
