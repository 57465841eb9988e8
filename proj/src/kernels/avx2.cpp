// Compiled with -mavx2 when the toolchain targets x86-64; callers reach this
// code only after a runtime CPU check.

#include "zipfcache/kernels/kernels.hpp"

#if defined(ZIPFCACHE_HAVE_AVX2)
#include <immintrin.h>
#endif

#include <stdexcept>

namespace zipfcache::kernels::avx2 {

#if defined(ZIPFCACHE_HAVE_AVX2)

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

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now) {
  const std::size_t n = stamp.size();
  if (n == 0) return kNoIndex;
  if (n < 8) return scalar::argmaxAgeRatio(stamp, invWeight, order, now);

  const double* st = stamp.data();
  const double* iw = invWeight.data();
  const double* od = order.data();
  const __m256d nowv = _mm256_set1_pd(now);
  const __m256d four = _mm256_set1_pd(4.0);

  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d bestIdx = idx;
  __m256d bestScore = _mm256_mul_pd(_mm256_sub_pd(nowv, _mm256_loadu_pd(st)), _mm256_loadu_pd(iw));
  __m256d bestOrder = _mm256_loadu_pd(od);

  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 4; i < body; i += 4) {
    idx = _mm256_add_pd(idx, four);
    const __m256d s = _mm256_mul_pd(_mm256_sub_pd(nowv, _mm256_loadu_pd(st + i)), _mm256_loadu_pd(iw + i));
    const __m256d o = _mm256_loadu_pd(od + i);
    const __m256d gt = _mm256_cmp_pd(s, bestScore, _CMP_GT_OQ);
    const __m256d eq = _mm256_and_pd(_mm256_cmp_pd(s, bestScore, _CMP_EQ_OQ),
                                     _mm256_cmp_pd(o, bestOrder, _CMP_LT_OQ));
    const __m256d take = _mm256_or_pd(gt, eq);
    bestScore = _mm256_blendv_pd(bestScore, s, take);
    bestOrder = _mm256_blendv_pd(bestOrder, o, take);
    bestIdx = _mm256_blendv_pd(bestIdx, idx, take);
  }

  alignas(32) double sc[4], orv[4], ix[4];
  _mm256_store_pd(sc, bestScore);
  _mm256_store_pd(orv, bestOrder);
  _mm256_store_pd(ix, bestIdx);
  Candidate best{sc[0], orv[0], ix[0]};
  for (int lane = 1; lane < 4; ++lane) {
    const Candidate c{sc[lane], orv[lane], ix[lane]};
    if (better(c, best)) best = c;
  }
  for (std::size_t i = body; i < n; ++i) {
    const Candidate c{(now - st[i]) * iw[i], od[i], static_cast<double>(i)};
    if (better(c, best)) best = c;
  }
  return static_cast<std::size_t>(best.index);
}

LinearSums linearFitSums(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double* xp = x.data();
  const double* yp = y.data();
  __m256d sx = _mm256_setzero_pd(), sy = sx, sxx = sx, sxy = sx;
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d xv = _mm256_loadu_pd(xp + i);
    const __m256d yv = _mm256_loadu_pd(yp + i);
    sx = _mm256_add_pd(sx, xv);
    sy = _mm256_add_pd(sy, yv);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(xv, xv));
    sxy = _mm256_add_pd(sxy, _mm256_mul_pd(xv, yv));
  }
  LinearSums r;
  r.sx = hsum(sx);
  r.sy = hsum(sy);
  r.sxx = hsum(sxx);
  r.sxy = hsum(sxy);
  for (std::size_t i = body; i < n; ++i) {
    r.sx += xp[i];
    r.sy += yp[i];
    r.sxx += xp[i] * xp[i];
    r.sxy += xp[i] * yp[i];
  }
  r.n = static_cast<double>(n);
  return r;
}

#else

std::size_t argmaxAgeRatio(std::span<const double>, std::span<const double>, std::span<const double>,
                           double) {
  throw std::logic_error("AVX2 kernels not built");
}

LinearSums linearFitSums(std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not built");
}

#endif

}  // namespace zipfcache::kernels::avx2
