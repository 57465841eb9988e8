#include <cmath>
#include <string>

#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"

namespace zipfcache::analytic {

namespace {

void requirePositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

// x^(1 - alpha) - 1 without cancellation near x = 1.
double powMinusOne(double x, double alpha) { return std::expm1((1.0 - alpha) * std::log(x)); }

}  // namespace

void requireAlpha(double alpha, const char* what) {
  if (!(alpha > kMinAlpha && alpha < kMaxAlpha)) {
    throw DomainError(std::string(what) + " must lie in (" + std::to_string(kMinAlpha) + ", " +
                      std::to_string(kMaxAlpha) + "), got " + std::to_string(alpha));
  }
}

void ZipfLaw::validate() const {
  requireAlpha(alpha);
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("a must lie in (0, 1]");
  if (!(k >= 1.0)) throw DomainError("k must be at least 1");
}

void TrafficModel::validate() const {
  requirePositive(nuOut, "nuOut");
  requirePositive(meanDocSize, "meanDocSize");
  requirePositive(duration, "duration");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  if (!(nClients >= 0.0)) throw DomainError("nClients must be nonnegative");
  if (!(pC > 0.0 && pC <= 1.0)) throw DomainError("pC must lie in (0, 1]");
}

RequestCount docsRequested(const TrafficModel& traffic) {
  traffic.validate();
  return {traffic.docsPerByte() * traffic.nuOut * traffic.duration,
          traffic.lambda * traffic.nClients * traffic.duration};
}

double normalizationConstant(double alpha, double p) {
  requireAlpha(alpha);
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must exceed 1");
  return (1.0 - alpha) / powMinusOne(p, alpha);
}

SpecialPoints specialPoints(const ZipfLaw& law) {
  requireAlpha(law.alpha);
  if (!(law.k >= 1.0) || !std::isfinite(law.k)) throw DomainError("k must be at least 1");
  const double alpha = law.alpha;
  const double k = law.k;
  const double target = k * (1.0 - alpha);
  auto f = [&](double p) { return p - std::pow(p, alpha) - target; };

  // f(1) < 0 and f is increasing for p >= 1, so [1, 2k] brackets the root
  // whenever k (1 + alpha) > (2k)^alpha.
  double lo = 1.0;
  double hi = 2.0 * k;
  if (f(hi) < 0.0) throw ModelError("no root of p - p^alpha = k(1 - alpha) in [1, 2k]");
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * hi) break;
  }
  const double p = 0.5 * (lo + hi);
  if (p > k) throw ModelError("unique-document count exceeds request count");
  const double m = p * std::exp2(-1.0 / alpha);
  if (m < 1.0) throw ModelError("two-request point falls below rank 1");

  SpecialPoints sp;
  sp.p = p;
  sp.m = m;
  sp.k = k;
  sp.a = normalizationConstant(alpha, p);
  sp.pApprox = target;
  return sp;
}

double hitRatioIntegral(double a, double alpha, double upper) {
  requireAlpha(alpha);
  if (!(a >= 0.0)) throw DomainError("A must be nonnegative");
  if (!(upper >= 1.0)) throw DomainError("upper index must be at least 1");
  return a * powMinusOne(upper, alpha) / (1.0 - alpha);
}

double realHitRatio(double pC, double a, double alpha, double sK) {
  if (!(pC > 0.0 && pC <= 1.0)) throw DomainError("pC must lie in (0, 1]");
  return pC * hitRatioIntegral(a, alpha, sK);
}

double idealHitBoundClosed(double alpha) {
  requireAlpha(alpha);
  return std::exp2((alpha - 1.0) / alpha);
}

IdealHitBounds idealHitBounds(double alpha, double p, double m, double k) {
  if (!(m >= 1.0 && m <= p && p <= k)) throw DomainError("expected 1 <= m <= p <= k");
  return {idealHitBoundClosed(alpha), 1.0 - (p - m) / k};
}

double hitScaling(double h1, double s1, double s2, double alpha) {
  requireAlpha(alpha);
  if (!(h1 > 0.0 && h1 < 1.0)) throw DomainError("h1 must lie in (0, 1)");
  requirePositive(s1, "s1");
  requirePositive(s2, "s2");
  const double h2 = h1 * std::pow(s2 / s1, 1.0 - alpha);
  if (h2 > 1.0) throw SaturationError("scaled hit ratio exceeds 1", h2);
  return h2;
}

double kernelShare(double tEff, double tU, double alpha) {
  requireAlpha(alpha);
  requirePositive(tEff, "tEff");
  requirePositive(tU, "tU");
  return tEff / ((std::exp2(1.0 / alpha) - 1.0) * tU);
}

PartSizes partSizesFromTrace(double mOfTEff, double pOfTu, double mOfTu) {
  if (mOfTEff < 0.0 || pOfTu < 0.0 || mOfTu < 0.0) throw DomainError("document counts must be nonnegative");
  if (pOfTu < mOfTu) throw DomainError("accessory size would be negative (p(t_u) < M(t_u))");
  PartSizes ps;
  ps.sK = mOfTEff;
  ps.sU = pOfTu - mOfTu;
  return ps;
}

}  // namespace zipfcache::analytic
