#include "zipfcache/kernels/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

#include <stdexcept>

namespace zipfcache::kernels::neon {

#if defined(__aarch64__)

namespace {

struct Candidate {
  double score;
  double order;
  double index;
};

inline bool better(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.order != b.order) return a.order < b.order;
  return a.index < b.index;
}

}  // namespace

std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now) {
  const std::size_t n = stamp.size();
  if (n == 0) return kNoIndex;
  if (n < 4) return scalar::argmaxAgeRatio(stamp, invWeight, order, now);

  const double* st = stamp.data();
  const double* iw = invWeight.data();
  const double* od = order.data();
  const float64x2_t nowv = vdupq_n_f64(now);
  const float64x2_t two = vdupq_n_f64(2.0);

  float64x2_t idx = {0.0, 1.0};
  float64x2_t bestIdx = idx;
  float64x2_t bestScore = vmulq_f64(vsubq_f64(nowv, vld1q_f64(st)), vld1q_f64(iw));
  float64x2_t bestOrder = vld1q_f64(od);

  const std::size_t body = n & ~std::size_t{1};
  for (std::size_t i = 2; i < body; i += 2) {
    idx = vaddq_f64(idx, two);
    const float64x2_t s = vmulq_f64(vsubq_f64(nowv, vld1q_f64(st + i)), vld1q_f64(iw + i));
    const float64x2_t o = vld1q_f64(od + i);
    const uint64x2_t take = vorrq_u64(vcgtq_f64(s, bestScore),
                                      vandq_u64(vceqq_f64(s, bestScore), vcltq_f64(o, bestOrder)));
    bestScore = vbslq_f64(take, s, bestScore);
    bestOrder = vbslq_f64(take, o, bestOrder);
    bestIdx = vbslq_f64(take, idx, bestIdx);
  }

  Candidate best{vgetq_lane_f64(bestScore, 0), vgetq_lane_f64(bestOrder, 0), vgetq_lane_f64(bestIdx, 0)};
  const Candidate other{vgetq_lane_f64(bestScore, 1), vgetq_lane_f64(bestOrder, 1),
                        vgetq_lane_f64(bestIdx, 1)};
  if (better(other, best)) best = other;
  for (std::size_t i = body; i < n; ++i) {
    const Candidate c{(now - st[i]) * iw[i], od[i], static_cast<double>(i)};
    if (better(c, best)) best = c;
  }
  return static_cast<std::size_t>(best.index);
}

LinearSums linearFitSums(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  float64x2_t sx = vdupq_n_f64(0.0), sy = sx, sxx = sx, sxy = sx;
  const std::size_t body = n & ~std::size_t{1};
  for (std::size_t i = 0; i < body; i += 2) {
    const float64x2_t xv = vld1q_f64(x.data() + i);
    const float64x2_t yv = vld1q_f64(y.data() + i);
    sx = vaddq_f64(sx, xv);
    sy = vaddq_f64(sy, yv);
    sxx = vaddq_f64(sxx, vmulq_f64(xv, xv));
    sxy = vaddq_f64(sxy, vmulq_f64(xv, yv));
  }
  LinearSums r;
  r.sx = vaddvq_f64(sx);
  r.sy = vaddvq_f64(sy);
  r.sxx = vaddvq_f64(sxx);
  r.sxy = vaddvq_f64(sxy);
  for (std::size_t i = body; i < n; ++i) {
    r.sx += x[i];
    r.sy += y[i];
    r.sxx += x[i] * x[i];
    r.sxy += x[i] * y[i];
  }
  r.n = static_cast<double>(n);
  return r;
}

#else

std::size_t argmaxAgeRatio(std::span<const double>, std::span<const double>, std::span<const double>,
                           double) {
  throw std::logic_error("NEON kernels not built");
}

LinearSums linearFitSums(std::span<const double>, std::span<const double>) {
  throw std::logic_error("NEON kernels not built");
}

#endif

}  // namespace zipfcache::kernels::neon
