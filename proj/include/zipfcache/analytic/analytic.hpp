#pragma once

// Closed-form and numeric laws for Zipf-driven proxy caches.
//
// Everything here is a pure function. Times are seconds, rates 1/seconds,
// sizes bytes. Popularity follows p_i = A / i^alpha with 0 < alpha < 1; the
// continuous forms integrate that law over document index x in [1, upper].

#include <cstdint>
#include <optional>
#include <span>

namespace zipfcache::analytic {

inline constexpr double kSecondsPerDay = 86400.0;

// Exponents at or beyond these limits are rejected rather than extrapolated.
inline constexpr double kMinAlpha = 0.01;
inline constexpr double kMaxAlpha = 0.999;

// Throws DomainError unless kMinAlpha < alpha < kMaxAlpha.
void requireAlpha(double alpha, const char* what = "alpha");

struct ZipfLaw {
  double alpha = 0.8;
  double a = 0.0;  // probability of the most popular item
  double k = 0.0;  // requests over the observation window

  void validate() const;
};

struct TrafficModel {
  double nuOut = 0.0;        // aggregated external bandwidth, bytes/s
  double meanDocSize = 0.0;  // E(C), bytes
  double lambda = 0.0;       // per-client request rate, 1/s
  double nClients = 0.0;
  double duration = 0.0;  // seconds
  double pC = 1.0;

  // The proportionality constant between bytes and documents.
  double docsPerByte() const { return 1.0 / meanDocSize; }
  void validate() const;
};

struct RequestCount {
  double fromBandwidth = 0.0;   // nu_out * t / E(C)
  double fromPopulation = 0.0;  // lambda * N * t
};

/// Documents requested over traffic.duration, by both the bandwidth and the
/// population route. The two agree when lambda = nu_out / (N * E(C)).
RequestCount docsRequested(const TrafficModel& traffic);

/// A such that the integral of A x^-alpha over [1, p] equals one.
double normalizationConstant(double alpha, double p);

struct SpecialPoints {
  double m = 0.0;        // index where the expected request count is 2
  double p = 0.0;        // index where the expected request count is 1
  double k = 0.0;        // total requests
  double a = 0.0;        // normalization constant implied by p
  double pApprox = 0.0;  // closed-form p ~ k (1 - alpha)
};

/// Solves A k / p^alpha = 1 together with the normalization over [1, p].
/// Substituting A reduces the system to p - p^alpha = k (1 - alpha), which is
/// monotone on [1, inf) and solved by bisection on [1, 2k]. law.a is not an
/// input; the returned a is the one consistent with the solved p.
/// Throws ModelError when the root falls outside [1, k] or m < 1.
SpecialPoints specialPoints(const ZipfLaw& law);

struct AlphaEstimates {
  double alpha1 = 0.0;  // ln 2 / ln(p / m)
  double alpha2 = 0.0;  // 1 - p / k
  double alpha3 = 0.0;  // 1 - 2 m / (h K)
};

AlphaEstimates fitAlphaThreeWays(double p, double k, double m, double h, double bigK);

/// Least-squares fit of ln(count) against ln(rank) over ranks [1, maxRank] of
/// a descending rank-frequency list; returns -slope. Zero counts are skipped.
/// Throws DomainError when fewer than two usable ranks remain.
double fitAlphaLogLog(std::span<const std::uint64_t> countsDescending, std::size_t maxRank);

/// Integral of A x^-alpha over [1, upper].
double hitRatioIntegral(double a, double alpha, double upper);

/// Hit ratio of a real cache whose kernel holds sK repeatedly requested documents.
double realHitRatio(double pC, double a, double alpha, double sK);

struct IdealHitBounds {
  double closed = 0.0;  // 2^((alpha - 1) / alpha)
  double count = 0.0;   // 1 - (p - m) / k
};

double idealHitBoundClosed(double alpha);
IdealHitBounds idealHitBounds(double alpha, double p, double m, double k);

/// h2 = h1 (s2 / s1)^(1 - alpha). Throws SaturationError when h2 > 1.
double hitScaling(double h1, double s1, double s2, double alpha);

/// Kernel to accessory document-count ratio S_k / S_u.
double kernelShare(double tEff, double tU, double alpha);

struct PartSizes {
  double sK = 0.0;
  double sU = 0.0;
  std::optional<double> tEff;
  std::optional<double> tU;
};

/// sK = M(T_eff), sU = p(t_u) - M(t_u).
PartSizes partSizesFromTrace(double mOfTEff, double pOfTu, double mOfTu);

struct OptimalSize {
  double tau = 0.0;               // S_eff / nu_int, seconds
  double kernelFraction = 0.0;    // 2^(1 / (2 (alpha - 1))), S_k / M_max
  double idealHitClosed = 0.0;    // 2^((alpha - 1) / alpha)
  double effectiveHitBound = 0.0; // pC * H_i / sqrt(2)
};

inline constexpr double kTauConstant = 2.61;

/// Lower limit on cache size per unit external bandwidth for a well-working
/// cache. pC only feeds the exposed effective-hit bound, not tau itself.
OptimalSize optimalTau(double muU, double alpha, double pC = 0.6);

/// M_max = (1 - alpha) pC H_i nu_out T_ch / 2, in documents when nuOut is in
/// documents per second.
double maxKernelDocs(double alpha, double pC, double idealHit, double nuOut, double tCh);

double effectiveHitBound(double pC, double idealHit);

/// Aggregate hit ratio over cacheable objects for a universe of n documents
/// that change at rate mu, requested at aggregate rate lambdaN. Integrated
/// adaptively in log space to relative tolerance 1e-8.
double wolmanHitRatio(double n, double alpha, double lambdaN, double mu);

double renewalAlphaR(double m, double h, double bigK);

double renewalDeltaH(double thetaSum, double h, double bigK);

/// Per-rank change rate implied by the gap between the ideal and
/// renewal-depressed request counts over tSt.
double renewalRate(double i, double p, double alpha, double alphaR, double tSt);

/// Aggregate freshness factor (1 - alpha) / (1 - alphaR).
double freshnessFromExponents(double alpha, double alphaR);

double extraPrefetchBandwidth(double ff, double nuInt);

struct RenewalModel {
  double alpha = 0.72;
  double alphaR = 0.70;
  double deltaH = 0.0;
  double hitRatio = 0.0;  // real H at which deltaH was observed
  double muP = 0.0;
  double muU = 0.0;
  double tSt = 0.0;
  double tCh() const { return 1.0 / muU; }

  void validate() const;
};

/// Reference operating point measured on a university proxy.
RenewalModel referenceRenewalModel();

}  // namespace zipfcache::analytic
