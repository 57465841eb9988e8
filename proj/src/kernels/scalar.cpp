#include "zipfcache/kernels/kernels.hpp"

#include <cmath>
#include <limits>

namespace zipfcache::kernels {

double LinearSums::slope() const {
  const double denom = n * sxx - sx * sx;
  if (n < 2.0 || denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

double LinearSums::intercept() const {
  const double b = slope();
  if (std::isnan(b)) return b;
  return (sy - b * sx) / n;
}

namespace scalar {

std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now) {
  const std::size_t n = stamp.size();
  if (n == 0) return kNoIndex;
  std::size_t best = 0;
  double bestScore = (now - stamp[0]) * invWeight[0];
  double bestOrder = order[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double s = (now - stamp[i]) * invWeight[i];
    if (s > bestScore || (s == bestScore && order[i] < bestOrder)) {
      best = i;
      bestScore = s;
      bestOrder = order[i];
    }
  }
  return best;
}

LinearSums linearFitSums(std::span<const double> x, std::span<const double> y) {
  LinearSums r;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    r.sx += x[i];
    r.sy += y[i];
    r.sxx += x[i] * x[i];
    r.sxy += x[i] * y[i];
  }
  r.n = static_cast<double>(n);
  return r;
}

}  // namespace scalar
}  // namespace zipfcache::kernels
