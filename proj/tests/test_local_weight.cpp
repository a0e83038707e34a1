#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pottslab/local_weight.hpp"
#include "pottslab/rng.hpp"

using namespace pottslab;

namespace {

// Independent oracle: exhaustive scan over a dense t-grid, no refinement.
double dense_grid_max(const Segment& seg, const PottsParams& p, int points) {
  double best = -1.0;
  for (int k = 0; k <= points; ++k) {
    const double t = static_cast<double>(k) / points;
    const Vec z = seg.at(t);
    double s = 0.0;
    for (double v : z) s += v * v;
    for (int i = 0; i < p.q; ++i) {
      const double s_i = s + (p.w - 1.0) * z[i] * z[i];
      best = std::max(best, std::sqrt(s) / s_i);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("local weight: constant segment has a closed form") {
  // x = y = all-ones, q = 3, w = 0.5: S = 3, S_i = 2.5, lambda = sqrt(3)/2.5
  const Segment seg{SqrtRatioVector{{1.0, 1.0, 1.0}}, SqrtRatioVector{{1.0, 1.0, 1.0}}};
  const PottsParams p{3, 0.5, 2};
  const LocalWeight lw = local_weight(seg, p);
  CHECK(lw.value == doctest::Approx(0.6928203230275509).epsilon(1e-14));
  CHECK(lw.value * lw.value == doctest::Approx(0.48).epsilon(1e-13));
  CHECK(lw.value * lw.value >= 1.0 / 3);
}

TEST_CASE("local weight: agrees with a 10^6-point dense-grid scan") {
  Rng rng(64);
  const PottsParams p{3, 0.5, 4};
  for (int it = 0; it < 5; ++it) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.next_range(0.2, 1.0);
      y[i] = rng.next_range(0.2, 1.0);
    }
    const Segment seg{SqrtRatioVector{x}, SqrtRatioVector{y}};
    const LocalWeight lw = local_weight(seg, p);
    CHECK(lw.value == doctest::Approx(dense_grid_max(seg, p, 1000000)).epsilon(1e-8));
  }
}

TEST_CASE("local weight: lambda^2 >= 1/q on valid segments") {
  Rng rng(65);
  for (int it = 0; it < 100; ++it) {
    const int q = 2 + rng.next_int(4);
    const PottsParams p{q, rng.next_range(0.05, 1.0), std::max(2, q)};
    Vec x(q), y(q);
    for (int i = 0; i < q; ++i) {
      x[i] = rng.next_range(0.05, 1.0);
      y[i] = rng.next_range(0.05, 1.0);
    }
    const LocalWeight lw = local_weight(Segment{SqrtRatioVector{x}, SqrtRatioVector{y}}, p);
    CHECK(lw.value * lw.value >= 1.0 / q - 1e-12);
    CHECK(lw.argmax_t >= 0.0);
    CHECK(lw.argmax_t <= 1.0);
    CHECK(lw.argmax_i >= 0);
    CHECK(lw.argmax_i < q);
  }
}

TEST_CASE("local weight: domain errors") {
  const PottsParams p{3, 0.5, 2};
  CHECK_THROWS_AS(
      local_weight(Segment{SqrtRatioVector{{0.0, 1.0, 1.0}}, SqrtRatioVector{{1.0, 1.0, 1.0}}}, p),
      std::invalid_argument);
  CHECK_THROWS_AS(
      local_weight(Segment{SqrtRatioVector{{1.5, 1.0, 1.0}}, SqrtRatioVector{{1.0, 1.0, 1.0}}}, p),
      std::invalid_argument);
  CHECK_THROWS_AS(
      local_weight(Segment{SqrtRatioVector{{1.0, 1.0, 1.0}}, SqrtRatioVector{{1.0, 1.0, 1.0}}},
                   PottsParams{3, 0.0, 2}),
      std::invalid_argument);
}
