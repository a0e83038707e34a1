#include "pottslab/local_weight.hpp"

#include <cmath>
#include <stdexcept>

namespace pottslab {

namespace {

// Objective for one color: g_i(t) = sqrt(S(Z(t))) / S_i(Z(t)).
double objective(const Segment& seg, double w, int i, double t) {
  const Vec z = seg.at(t);
  double s = 0.0;
  for (double v : z) s += v * v;
  const double s_i = s + (w - 1.0) * z[i] * z[i];
  return std::sqrt(s) / s_i;
}

constexpr double kInvGolden = 0.6180339887498949;  // 1/phi

// Golden-section maximization of g_i on [lo, hi].
double golden_max(const Segment& seg, double w, int i, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double c = b - kInvGolden * (b - a);
  double d = a + kInvGolden * (b - a);
  double fc = objective(seg, w, i, c);
  double fd = objective(seg, w, i, d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvGolden * (b - a);
      fc = objective(seg, w, i, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvGolden * (b - a);
      fd = objective(seg, w, i, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

LocalWeight local_weight(const Segment& seg, const PottsParams& params,
                         const SearchConfig& search) {
  params.validate();
  if (!(params.w > 0.0)) throw std::invalid_argument("local_weight: requires w > 0");
  if (seg.dimension() != params.q || static_cast<int>(seg.y.entries.size()) != params.q)
    throw std::invalid_argument("local_weight: segment has wrong dimension");
  for (const auto* end : {&seg.x.entries, &seg.y.entries})
    for (double v : *end)
      if (!(v > 0.0 && v <= 1.0))
        throw std::invalid_argument("local_weight: endpoint entries must lie in (0,1]");
  if (search.grid_points < 2) throw std::invalid_argument("local_weight: grid too coarse");

  LocalWeight best{-1.0, 0.0, 0};
  const int n = search.grid_points;
  for (int i = 0; i < params.q; ++i) {
    // Dense scan, then refine around the best cell.
    int best_k = 0;
    double best_val = -1.0;
    for (int k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      const double val = objective(seg, params.w, i, t);
      if (val > best_val) {
        best_val = val;
        best_k = k;
      }
    }
    const double lo = std::max(0.0, (best_k - 1.0) / n);
    const double hi = std::min(1.0, (best_k + 1.0) / n);
    const double t_star = golden_max(seg, params.w, i, lo, hi, search.t_tol);
    double val = objective(seg, params.w, i, t_star);
    double t_at = t_star;
    if (best_val > val) {  // refinement never loses to the scan
      val = best_val;
      t_at = static_cast<double>(best_k) / n;
    }
    if (val > best.value) best = LocalWeight{val, t_at, i};
  }
  return best;
}

}  // namespace pottslab
