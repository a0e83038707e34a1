#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pottslab {

using Vec = std::vector<double>;

inline double vec_sum(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2_sq(const Vec& x) { return dot(x, x); }

inline double norm2(const Vec& x) { return std::sqrt(norm2_sq(x)); }

inline Vec sub(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

inline Vec scaled(const Vec& x, double c) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

inline double max_abs_diff(const Vec& x, const Vec& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace pottslab
