#include <doctest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"

using namespace zipfcache;
using namespace zipfcache::analytic;
using doctest::Approx;

namespace {

constexpr double kDay = 86400.0;

// p from the two-equation system {A k / p^alpha = 1, A = (1 - alpha) / (p^(1-alpha) - 1)}
// solved directly with TOMS 748 (no reduction to p - p^alpha).
double systemRoot(double alpha, double k) {
  auto g = [&](double p) {
    const double a = (1.0 - alpha) / (std::pow(p, 1.0 - alpha) - 1.0);
    return std::log(a * k) - alpha * std::log(p);
  };
  boost::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(g, 1.0 + 1e-9, 2.0 * k,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("docsRequested: bandwidth and population routes") {
  TrafficModel t{1e6, 1e4, 0.0, 50.0, 1e3, 1.0};
  CHECK(docsRequested(t).fromBandwidth == Approx(1e5));
  CHECK(docsRequested(t).fromPopulation == 0.0);

  t.lambda = t.nuOut / (t.nClients * t.meanDocSize);
  const auto r = docsRequested(t);
  CHECK(r.fromPopulation == Approx(r.fromBandwidth).epsilon(1e-12));

  t.duration = 0.0;
  CHECK_THROWS_AS(docsRequested(t), DomainError);
}

TEST_CASE("normalizationConstant integrates to one") {
  const double a = normalizationConstant(0.5, 1e6);
  CHECK(a == Approx(0.5 / 999.0).epsilon(1e-12));
  // Substitute x = u^2 to remove the endpoint singularity of x^-0.5.
  const double total = testing::simpson([&](double u) { return a * std::pow(u * u, -0.5) * 2.0 * u; }, 1.0, 1e3,
                                        200000);
  CHECK(total == Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(normalizationConstant(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(normalizationConstant(0.5, 0.9), DomainError);
  CHECK_THROWS_AS(normalizationConstant(1.0, 10.0), DomainError);
}

TEST_CASE("specialPoints: alpha 0.75, k 1e6") {
  const auto sp = specialPoints({0.75, 0.0, 1e6});
  // Scalar-equation oracle, bisected independently here.
  double lo = 1.0, hi = 2e6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid - std::pow(mid, 0.75) < 2.5e5 ? lo : hi) = mid;
  }
  CHECK(sp.p == Approx(lo).epsilon(1e-10));
  CHECK(sp.p == Approx(2.616e5).epsilon(1e-3));
  CHECK(sp.pApprox == Approx(2.5e5));
  CHECK(sp.m / sp.p == Approx(std::pow(2.0, -4.0 / 3.0)).epsilon(1e-12));
  CHECK(sp.m / sp.p == Approx(0.3969).epsilon(1e-4));
  CHECK((sp.p - sp.pApprox) / sp.p < 0.05);
}

TEST_CASE("specialPoints errors") {
  CHECK_THROWS_AS(specialPoints({1.0, 0.0, 1e6}), DomainError);
  CHECK_THROWS_AS(specialPoints({0.8, 0.0, 0.5}), DomainError);
  // k = 1: p = 1 and m < 1.
  CHECK_THROWS_AS(specialPoints({0.8, 0.0, 1.0}), ModelError);
}

TEST_CASE("property: special points satisfy the fundamental system") {
  std::mt19937_64 gen(20240521);
  std::uniform_real_distribution<double> alphaDist(0.5, 0.9);
  std::uniform_real_distribution<double> logK(4.0, 7.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alphaDist(gen);
    const double k = std::pow(10.0, logK(gen));
    const auto sp = specialPoints({alpha, 0.0, k});
    CAPTURE(alpha);
    CAPTURE(k);
    // Re-substitution: A k / M^alpha = 2 and A k / p^alpha = 1.
    CHECK(sp.a * k / std::pow(sp.m, alpha) == Approx(2.0).epsilon(1e-6));
    CHECK(sp.a * k / std::pow(sp.p, alpha) == Approx(1.0).epsilon(1e-6));
    CHECK(std::fabs(sp.pApprox - sp.p) / sp.p <= std::pow(sp.p, alpha - 1.0) * (1.0 + 1e-9));
    CHECK(sp.p == Approx(systemRoot(alpha, k)).epsilon(1e-9));
    CHECK(sp.m <= sp.p);
    CHECK(sp.p <= k);
  }
}

TEST_CASE("fitAlphaThreeWays") {
  // Continuous special points reproduce alpha through the first estimator.
  const auto sp = specialPoints({0.72, 0.0, 1e6});
  const auto est = fitAlphaThreeWays(sp.p, sp.k, sp.m, 0.5, 1e6);
  CHECK(est.alpha1 == Approx(0.72).epsilon(1e-12));
  CHECK(est.alpha2 == Approx(1.0 - sp.p / sp.k));
  CHECK(est.alpha3 == Approx(1.0 - 2.0 * sp.m / (0.5 * 1e6)));

  CHECK(fitAlphaThreeWays(200, 1000, 100, 0.5, 1000).alpha1 == Approx(1.0));
  CHECK(fitAlphaThreeWays(1000, 1000, 100, 0.5, 1000).alpha2 == 0.0);
  CHECK_THROWS_AS(fitAlphaThreeWays(100, 1000, 100, 0.5, 1000), DomainError);
  CHECK_THROWS_AS(fitAlphaThreeWays(2000, 1000, 100, 0.5, 1000), DomainError);
}

TEST_CASE("fitAlphaLogLog recovers an exact power law") {
  std::vector<std::uint64_t> counts;
  for (int i = 1; i <= 1000; ++i) counts.push_back(static_cast<std::uint64_t>(std::llround(1e9 * std::pow(i, -0.8))));
  CHECK(fitAlphaLogLog(counts, 1000) == Approx(0.8).epsilon(1e-5));
  CHECK(fitAlphaLogLog(counts, 10) == Approx(0.8).epsilon(1e-5));
  const std::vector<std::uint64_t> one{5};
  CHECK_THROWS_AS(fitAlphaLogLog(one, 10), DomainError);
}

TEST_CASE("hitRatioIntegral and realHitRatio") {
  const double a = normalizationConstant(0.5, 1e6);
  CHECK(hitRatioIntegral(a, 0.5, 1.0) == 0.0);
  CHECK(hitRatioIntegral(a, 0.5, 1e6) == Approx(1.0).epsilon(1e-12));
  const double oracle =
      testing::simpson([&](double u) { return a * std::pow(u * u, -0.5) * 2.0 * u; }, 1.0, 100.0, 20000);
  CHECK(hitRatioIntegral(a, 0.5, 1e4) == Approx(oracle).epsilon(1e-10));
  CHECK(hitRatioIntegral(a, 0.5, 1e4) == Approx(0.0991).epsilon(1e-3));
  CHECK_THROWS_AS(hitRatioIntegral(a, 0.5, 0.5), DomainError);

  CHECK(realHitRatio(1.0, a, 0.5, 1e6) == Approx(1.0));
  CHECK(realHitRatio(0.6, a, 0.5, 1e6) == Approx(0.6));
  CHECK(realHitRatio(0.6, a, 0.5, 1e4) == Approx(0.6 * oracle).epsilon(1e-10));
  CHECK(realHitRatio(0.6, a, 0.5, 1e4) == Approx(0.0595).epsilon(1e-3));
}

TEST_CASE("ideal hit bounds") {
  CHECK(idealHitBoundClosed(0.7) == Approx(std::pow(2.0, -3.0 / 7.0)).epsilon(1e-14));
  CHECK(std::fabs(idealHitBoundClosed(0.7) - 0.7430) < 1e-4);
  CHECK(idealHitBoundClosed(0.998) > 0.998);
  const auto b = idealHitBounds(0.8, 400, 100, 1000);
  CHECK(b.count == Approx(0.7));
  CHECK_THROWS_AS(idealHitBounds(0.8, 50, 100, 1000), DomainError);
  CHECK_THROWS_AS(idealHitBounds(0.8, 2000, 100, 1000), DomainError);
}

TEST_CASE("hitScaling") {
  CHECK(hitScaling(0.3, 5.0, 5.0, 0.8) == Approx(0.3));
  CHECK(hitScaling(0.3, 1.0, 2.0, 0.8) == Approx(0.30 * std::pow(2.0, 0.2)));
  CHECK(hitScaling(0.3, 1.0, 2.0, 0.8) == Approx(0.3446).epsilon(1e-3));
  CHECK(hitScaling(0.3, 1.0, 10.0, 0.998) == Approx(0.3).epsilon(0.01));
  try {
    hitScaling(0.9, 1.0, 1e6, 0.5);
    FAIL("expected saturation");
  } catch (const SaturationError& e) {
    CHECK(e.value() > 1.0);
  }
}

TEST_CASE("kernelShare and partSizesFromTrace") {
  CHECK(kernelShare(1.0, 1.0, 0.7) == Approx(1.0 / (std::pow(2.0, 1.0 / 0.7) - 1.0)));
  CHECK(kernelShare(1.0, 1.0, 0.7) == Approx(0.591).epsilon(1e-3));
  CHECK(kernelShare(1.0, 1.0, 1.0 / std::log2(3.0)) == Approx(0.5).epsilon(1e-12));
  CHECK(kernelShare(2.0, 1.0, 0.7) == Approx(1.182).epsilon(1e-3));

  const auto ps = partSizesFromTrace(100, 500, 100);
  CHECK(ps.sK == 100);
  CHECK(ps.sU == 400);
  CHECK(partSizesFromTrace(100, 100, 100).sU == 0);
  CHECK_THROWS_AS(partSizesFromTrace(100, 50, 100), DomainError);
}

TEST_CASE("optimalTau") {
  const auto t8 = optimalTau(1.0 / (186.0 * kDay), 0.8);
  CHECK(std::fabs(t8.tau / kDay - 6.0) < 0.1);
  // Direct evaluation of 2^(1/a) 2^(1/(2(a-1))) (1-a) / (2.61 mu).
  const double direct = std::pow(2.0, 1.0 / 0.7) * std::pow(2.0, 1.0 / (2.0 * (0.7 - 1.0))) * 0.3 * 186.0 / 2.61;
  const auto t7 = optimalTau(1.0 / (186.0 * kDay), 0.7);
  CHECK(t7.tau / kDay == Approx(direct).epsilon(1e-12));
  CHECK(t7.tau / kDay == Approx(18.1).epsilon(0.01));
  CHECK(t7.effectiveHitBound == Approx(0.6 * std::pow(2.0, -3.0 / 7.0) / std::sqrt(2.0)));
  CHECK_THROWS_AS(optimalTau(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(optimalTau(0.0, 0.8), DomainError);

  CHECK(maxKernelDocs(0.7, 0.6, 0.75, 100.0, 1000.0) == Approx(0.3 * 0.6 * 0.75 * 100.0 * 1000.0 / 2.0));
}

TEST_CASE("wolmanHitRatio") {
  CHECK(wolmanHitRatio(1e6, 0.8, 10.0, 0.0) == Approx(1.0).epsilon(1e-9));

  // mu C / (lambda N) >= 1e9 at x = 1.
  const double c = (std::pow(1e6, 0.2) - 1.0) / 0.2;
  CHECK(wolmanHitRatio(1e6, 0.8, 10.0, 1e10 / c) < 1e-6);

  // Second integrator: fixed-step Simpson over u = ln x with 10^6 panels.
  const double n = 1e6, alpha = 0.8, lambdaN = 10.0, mu = 1.0 / (186.0 * kDay);
  auto f = [&](double u) {
    const double x = std::exp(u);
    return x / (c * std::pow(x, alpha)) / (1.0 + mu * c * std::pow(x, alpha) / lambdaN);
  };
  const double oracle = testing::simpson(f, 0.0, std::log(n), 1000000);
  CHECK(wolmanHitRatio(n, alpha, lambdaN, mu) == Approx(oracle).epsilon(1e-8));

  CHECK_THROWS_AS(wolmanHitRatio(1.0, 0.8, 10.0, 0.0), DomainError);
  CHECK_THROWS_AS(wolmanHitRatio(1e6, 0.8, 0.0, 0.0), DomainError);
}

TEST_CASE("renewal quantities") {
  CHECK(renewalAlphaR(1e-9, 0.35, 1e6) == Approx(1.0));
  CHECK(renewalAlphaR(1e4, 0.35, 1e6) == Approx(1.0 - 2e4 / 3.5e5));
  CHECK(renewalAlphaR(1e4, 0.35, 1e6) == Approx(0.943).epsilon(1e-3));
  CHECK_THROWS_AS(renewalAlphaR(2e5, 0.35, 1e6), DomainError);

  CHECK(renewalDeltaH(0.35e6, 0.35, 1e6) == 0.0);
  CHECK(renewalDeltaH(0.40e6, 0.35, 1e6) == Approx(0.05));

  CHECK(renewalRate(1e5, 1e5, 0.72, 0.70, 100.0) == 0.0);
  CHECK(renewalRate(10, 1e5, 0.72, 0.72, 100.0) == 0.0);
  CHECK(renewalRate(1, 1e5, 0.72, 0.70, 100.0) == Approx((std::pow(10.0, 3.6) - std::pow(10.0, 3.5)) / 100.0));
  CHECK(renewalRate(1, 1e5, 0.72, 0.70, 100.0) == Approx(8.19).epsilon(1e-3));
  CHECK_THROWS_AS(renewalRate(2e5, 1e5, 0.72, 0.70, 100.0), DomainError);

  // Nonincreasing in rank and nonnegative on [1, p].
  double prev = renewalRate(1, 1e5, 0.72, 0.70, 100.0);
  for (double i = 2; i <= 1e5; i *= 1.7) {
    const double r = renewalRate(i, 1e5, 0.72, 0.70, 100.0);
    CHECK(r >= 0.0);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("freshness factor and extra bandwidth") {
  const double ff = freshnessFromExponents(0.72, 0.70);
  CHECK(ff == Approx(0.28 / 0.30).epsilon(1e-14));
  CHECK(std::fabs(ff - 0.933) < 0.001);
  CHECK(freshnessFromExponents(0.72, 0.72) == 1.0);
  CHECK_THROWS_AS(freshnessFromExponents(0.70, 0.72), DomainError);

  CHECK(extraPrefetchBandwidth(1.0, 5.0) == 0.0);
  CHECK(extraPrefetchBandwidth(0.0, 5.0) == 5.0);
  CHECK(std::fabs(extraPrefetchBandwidth(ff, 1.0) - 0.067) < 0.001);
}

TEST_CASE("alpha domain") {
  CHECK_NOTHROW(requireAlpha(0.5));
  CHECK_THROWS_AS(requireAlpha(1.0), DomainError);
  CHECK_THROWS_AS(requireAlpha(1.2), DomainError);
  CHECK_THROWS_AS(requireAlpha(0.0), DomainError);
}

TEST_CASE("reference renewal model is self-consistent") {
  const auto r = referenceRenewalModel();
  CHECK_NOTHROW(r.validate());
  CHECK(r.tCh() / kDay == Approx(202.0));
  CHECK(freshnessFromExponents(r.alpha, r.alphaR) == Approx(0.9333).epsilon(1e-4));
}
