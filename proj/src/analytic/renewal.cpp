#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"

namespace zipfcache::analytic {

OptimalSize optimalTau(double muU, double alpha, double pC) {
  requireAlpha(alpha);
  if (!(muU > 0.0) || !std::isfinite(muU)) throw DomainError("muU must be positive");
  if (!(pC > 0.0 && pC <= 1.0)) throw DomainError("pC must lie in (0, 1]");
  OptimalSize r;
  r.kernelFraction = std::exp2(1.0 / (2.0 * (alpha - 1.0)));
  r.tau = std::exp2(1.0 / alpha) * r.kernelFraction * (1.0 - alpha) / (kTauConstant * muU);
  r.idealHitClosed = idealHitBoundClosed(alpha);
  r.effectiveHitBound = effectiveHitBound(pC, r.idealHitClosed);
  return r;
}

double maxKernelDocs(double alpha, double pC, double idealHit, double nuOut, double tCh) {
  requireAlpha(alpha);
  if (!(pC > 0.0 && pC <= 1.0)) throw DomainError("pC must lie in (0, 1]");
  if (!(idealHit >= 0.0 && idealHit <= 1.0)) throw DomainError("ideal hit ratio must lie in [0, 1]");
  if (!(nuOut >= 0.0 && tCh >= 0.0)) throw DomainError("nuOut and tCh must be nonnegative");
  return (1.0 - alpha) * pC * idealHit * nuOut * tCh / 2.0;
}

double effectiveHitBound(double pC, double idealHit) { return pC * idealHit / std::sqrt(2.0); }

double wolmanHitRatio(double n, double alpha, double lambdaN, double mu) {
  requireAlpha(alpha);
  if (!(n > 1.0) || !std::isfinite(n)) throw DomainError("universe size must exceed 1");
  if (!(lambdaN > 0.0)) throw DomainError("aggregate request rate must be positive");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("change rate must be nonnegative");

  const double oneMinus = 1.0 - alpha;
  const double c = std::expm1(oneMinus * std::log(n)) / oneMinus;
  const double staleness = mu * c / lambdaN;
  // x = e^u flattens the power law; dx = e^u du.
  auto integrand = [&](double u) {
    const double xa = std::exp(alpha * u);
    return std::exp(oneMinus * u) / c / (1.0 + staleness * xa);
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      integrand, 0.0, std::log(n), 30, 1e-8, &error);
  if (!std::isfinite(value) || error > 1e-8 * std::fabs(value) + 1e-300)
    throw NumericError("quadrature did not converge (error estimate " + std::to_string(error) + ")");
  return value;
}

double renewalAlphaR(double m, double h, double bigK) {
  if (!(h > 0.0 && bigK > 0.0)) throw DomainError("h and K must be positive");
  if (!(m >= 0.0)) throw DomainError("m must be nonnegative");
  if (2.0 * m >= h * bigK) throw DomainError("2m >= hK gives a nonpositive renewal exponent");
  return 1.0 - 2.0 * m / (h * bigK);
}

double renewalDeltaH(double thetaSum, double h, double bigK) {
  if (!(thetaSum >= 0.0 && h >= 0.0)) throw DomainError("inputs must be nonnegative");
  if (!(bigK > 0.0)) throw DomainError("K must be positive");
  return (thetaSum - h * bigK) / bigK;
}

double renewalRate(double i, double p, double alpha, double alphaR, double tSt) {
  requireAlpha(alpha);
  if (!(alphaR > 0.0 && alphaR <= alpha)) throw DomainError("expected 0 < alphaR <= alpha");
  if (!(i >= 1.0)) throw DomainError("rank must be at least 1");
  if (i > p) throw DomainError("rank exceeds unique-document count");
  if (!(tSt > 0.0)) throw DomainError("observation period must be positive");
  const double ratio = p / i;
  return (std::pow(ratio, alpha) - std::pow(ratio, alphaR)) / tSt;
}

double freshnessFromExponents(double alpha, double alphaR) {
  requireAlpha(alpha);
  if (!(alphaR > 0.0 && alphaR <= alpha)) throw DomainError("expected 0 < alphaR <= alpha");
  return (1.0 - alpha) / (1.0 - alphaR);
}

double extraPrefetchBandwidth(double ff, double nuInt) {
  if (!(ff >= 0.0 && ff <= 1.0)) throw DomainError("freshness factor must lie in [0, 1]");
  if (!(nuInt >= 0.0)) throw DomainError("bandwidth must be nonnegative");
  return (1.0 - ff) * nuInt;
}

void RenewalModel::validate() const {
  requireAlpha(alpha);
  if (!(alphaR > 0.0 && alphaR <= alpha)) throw DomainError("expected 0 < alphaR <= alpha");
  if (!(deltaH >= 0.0)) throw DomainError("deltaH must be nonnegative");
  if (!(muU > 0.0 && muP >= muU)) throw DomainError("expected muP >= muU > 0");
  if (!(tSt >= 0.0)) throw DomainError("tSt must be nonnegative");
}

RenewalModel referenceRenewalModel() {
  RenewalModel r;
  r.alpha = 0.72;
  r.alphaR = 0.70;
  r.deltaH = 0.023;
  r.hitRatio = 0.3204;
  r.muP = 1.0 / (6.2 * kSecondsPerDay);
  r.muU = 1.0 / (202.0 * kSecondsPerDay);
  return r;
}

}  // namespace zipfcache::analytic
