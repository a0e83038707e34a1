#include "pottslab/recursion.hpp"

#include <cmath>
#include <stdexcept>

namespace pottslab {

double s_total(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double s_color(const Vec& x, int i, double w) {
  return s_total(x) + (w - 1.0) * x[i] * x[i];
}

namespace {

void check_f_domain(const Vec& x, const PottsParams& params) {
  params.validate();
  if (static_cast<int>(x.size()) != params.q)
    throw std::invalid_argument("apply_f: vector has wrong dimension");
  bool nonzero = false;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("apply_f: negative entry");
    if (v != 0.0) nonzero = true;
  }
  if (!nonzero) throw std::invalid_argument("apply_f: zero vector");
}

}  // namespace

Vec apply_f(const Vec& x, const PottsParams& params) {
  check_f_domain(x, params);
  const double s = s_total(x);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::sqrt(1.0 + (params.w - 1.0) * (x[i] * x[i]) / s);
  return out;
}

Vec JacobianFactors::apply(const Vec& v) const {
  const double along = dot(projector, v);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = diag_part[i] * (v[i] - projector[i] * along);
  return out;
}

std::vector<Vec> JacobianFactors::dense() const {
  const std::size_t q = diag_part.size();
  std::vector<Vec> m(q, Vec(q, 0.0));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const double proj = (i == j ? 1.0 : 0.0) - projector[i] * projector[j];
      m[i][j] = diag_part[i] * proj;
    }
  return m;
}

JacobianFactors jacobian_f(const Vec& x, const PottsParams& params) {
  params.validate();
  if (static_cast<int>(x.size()) != params.q)
    throw std::invalid_argument("jacobian_f: vector has wrong dimension");
  for (double v : x)
    if (!(v > 0.0)) throw std::invalid_argument("jacobian_f: entries must be strictly positive");

  const double s = s_total(x);
  const double sqrt_s = std::sqrt(s);
  const Vec f = apply_f(x, params);
  JacobianFactors jf;
  jf.diag_part.resize(x.size());
  jf.projector.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    jf.diag_part[i] = (params.w - 1.0) / f[i] * x[i] / s;
    jf.projector[i] = x[i] / sqrt_s;
  }
  return jf;
}

Vec Segment::at(double t) const {
  Vec z(x.entries.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] = t * x.entries[i] + (1.0 - t) * y.entries[i];
  return z;
}

SegmentStats segment_s_stats(const Segment& seg, const PottsParams& params, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("segment_s_stats: t outside [0,1]");
  const Vec z = seg.at(t);
  SegmentStats st;
  st.s = s_total(z);
  st.s_color.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    st.s_color[i] = st.s + (params.w - 1.0) * z[i] * z[i];
  st.f_of_z = apply_f(z, params);
  return st;
}

std::vector<Vec> finite_difference_jacobian(const Vec& x, const PottsParams& params, double step) {
  const std::size_t q = x.size();
  std::vector<Vec> m(q, Vec(q, 0.0));
  for (std::size_t j = 0; j < q; ++j) {
    Vec hi = x, lo = x;
    hi[j] += step;
    lo[j] -= step;
    const Vec f_hi = apply_f(hi, params);
    const Vec f_lo = apply_f(lo, params);
    for (std::size_t i = 0; i < q; ++i) m[i][j] = (f_hi[i] - f_lo[i]) / (2.0 * step);
  }
  return m;
}

}  // namespace pottslab
