#include "zipfcache/trace/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"
#include "zipfcache/trace/rng.hpp"

namespace zipfcache::trace {

namespace {

struct PendingRequest {
  double time;
  std::uint32_t rank;
};

struct PendingModification {
  double time;
  std::uint32_t rank;
  std::uint64_t size;
};

class SizeSampler {
 public:
  SizeSampler(double mean, double spread) : mu_(std::log(mean) - 0.5 * spread * spread), sigma_(spread) {}

  std::uint64_t draw(Rng& rng) const {
    const double v = std::exp(mu_ + sigma_ * rng.normal());
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(v)));
  }

 private:
  double mu_;
  double sigma_;
};

// Inverse-CDF sampler over ranks 1..n with weights i^-alpha.
class ZipfSampler {
 public:
  ZipfSampler(std::uint64_t n, double alpha) : cdf_(n) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      acc += std::pow(static_cast<double>(i + 1), -alpha);
      cdf_[i] = acc;
    }
  }

  std::uint32_t draw(Rng& rng) const {
    const double target = rng.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    return static_cast<std::uint32_t>(idx + 1);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

void SyntheticSpec::validate() const {
  if (nObjects < 2) throw ConfigError("nObjects must be at least 2");
  if (nObjects > 0xffffffffULL) throw ConfigError("nObjects exceeds 2^32 - 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(requestRate >= 0.0) || !std::isfinite(requestRate)) throw ConfigError("requestRate must be nonnegative");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be nonnegative");
  if (!(meanDocSize >= 1.0)) throw ConfigError("meanDocSize must be at least 1 byte");
  if (!(sizeSpread >= 0.0)) throw ConfigError("sizeSpread must be nonnegative");
  if (!(muP >= 0.0 && muU >= 0.0)) throw ConfigError("change rates must be nonnegative");
  if (!(pC >= 0.0 && pC <= 1.0)) throw ConfigError("pC must lie in [0, 1]");
}

std::uint64_t SyntheticSpec::resolvedBoundary() const {
  if (popularBoundary) return std::min(*popularBoundary, nObjects);
  const double k = requestRate * duration;
  try {
    const auto sp = analytic::specialPoints({alpha, 0.0, k});
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(sp.m), nObjects);
  } catch (const std::exception&) {
    // Too few requests (or alpha out of the analytic range) for a
    // two-request point: every object is treated as unpopular.
    return 0;
  }
}

std::vector<TraceEvent> generateTrace(const SyntheticSpec& spec) {
  spec.validate();
  const std::uint64_t n = spec.nObjects;
  Rng rng(spec.seed);
  const SizeSampler sizes(spec.meanDocSize, spec.sizeSpread);

  std::vector<std::uint64_t> currentSize(n + 1);
  std::vector<char> cacheable(n + 1);
  for (std::uint64_t r = 1; r <= n; ++r) {
    currentSize[r] = sizes.draw(rng);
    cacheable[r] = rng.bernoulli(spec.pC) ? 1 : 0;
  }

  std::vector<PendingRequest> requests;
  if (spec.requestRate > 0.0 && spec.duration > 0.0) {
    const ZipfSampler zipf(n, spec.alpha);
    requests.reserve(static_cast<std::size_t>(spec.requestRate * spec.duration * 1.01) + 16);
    if (spec.arrivals == ArrivalProcess::poisson) {
      double t = 0.0;
      for (;;) {
        t += rng.exponential(spec.requestRate);
        if (t >= spec.duration) break;
        requests.push_back({t, zipf.draw(rng)});
      }
    } else {
      for (std::uint64_t i = 0;; ++i) {
        const double t = static_cast<double>(i) / spec.requestRate;
        if (t >= spec.duration) break;
        requests.push_back({t, zipf.draw(rng)});
      }
    }
  }

  std::vector<PendingModification> mods;
  const std::uint64_t boundary = spec.resolvedBoundary();
  for (std::uint64_t r = 1; r <= n; ++r) {
    const double mu = r <= boundary ? spec.muP : spec.muU;
    if (mu <= 0.0) continue;
    double t = 0.0;
    for (;;) {
      t += rng.exponential(mu);
      if (t >= spec.duration) break;
      mods.push_back({t, static_cast<std::uint32_t>(r), sizes.draw(rng)});
    }
  }
  std::stable_sort(mods.begin(), mods.end(),
                   [](const PendingModification& a, const PendingModification& b) { return a.time < b.time; });

  std::vector<TraceEvent> out;
  out.reserve(requests.size() + mods.size());
  auto emit = [&](double t, std::uint32_t rank, EventKind kind) {
    TraceEvent e;
    e.timestamp = t;
    e.objectId = "d" + std::to_string(rank);
    e.sizeBytes = currentSize[rank];
    e.kind = kind;
    e.cacheable = cacheable[rank] != 0;
    out.push_back(std::move(e));
  };
  std::size_t ri = 0;
  std::size_t mi = 0;
  while (ri < requests.size() || mi < mods.size()) {
    const bool takeRequest = mi == mods.size() || (ri < requests.size() && requests[ri].time <= mods[mi].time);
    if (takeRequest) {
      emit(requests[ri].time, requests[ri].rank, EventKind::request);
      ++ri;
    } else {
      currentSize[mods[mi].rank] = mods[mi].size;
      emit(mods[mi].time, mods[mi].rank, EventKind::modification);
      ++mi;
    }
  }
  return out;
}

}  // namespace zipfcache::trace
