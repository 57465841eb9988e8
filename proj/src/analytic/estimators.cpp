#include <algorithm>
#include <cmath>
#include <vector>

#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"
#include "zipfcache/kernels/kernels.hpp"

namespace zipfcache::analytic {

AlphaEstimates fitAlphaThreeWays(double p, double k, double m, double h, double bigK) {
  if (!(p > 0.0 && k > 0.0 && m > 0.0 && h > 0.0 && bigK > 0.0))
    throw DomainError("all inputs must be positive");
  if (p <= m) throw DomainError("p must exceed m");
  if (k < p) throw DomainError("k must be at least p");
  AlphaEstimates e;
  e.alpha1 = std::log(2.0) / std::log(p / m);
  e.alpha2 = 1.0 - p / k;
  e.alpha3 = 1.0 - 2.0 * m / (h * bigK);
  return e;
}

double fitAlphaLogLog(std::span<const std::uint64_t> countsDescending, std::size_t maxRank) {
  const std::size_t n = std::min(maxRank, countsDescending.size());
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(n);
  y.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (countsDescending[r] == 0) continue;
    x.push_back(std::log(static_cast<double>(r + 1)));
    y.push_back(std::log(static_cast<double>(countsDescending[r])));
  }
  if (x.size() < 2) throw DomainError("log-log fit needs at least two nonzero ranks");
  const double slope = kernels::linearFitSums(x, y).slope();
  if (!std::isfinite(slope)) throw NumericError("degenerate log-log fit");
  return -slope;
}

}  // namespace zipfcache::analytic
