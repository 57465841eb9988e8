#include "zipfcache/prefetch/prefetch.hpp"

#include <algorithm>
#include <cmath>

#include "zipfcache/errors.hpp"

namespace zipfcache::prefetch {

using sim::ObjectKey;
using sim::PrefetchScheme;

void ObjectPrefetchStats::validate() const {
  if (!(pI >= 0.0 && pI <= 1.0)) throw DomainError("access probability must lie in [0,1]");
  if (!(lI > 0.0)) throw DomainError("lifetime must be positive");
  if (!(aRate >= 0.0) || std::isinf(aRate)) throw DomainError("request rate must be finite and nonnegative");
}

double goodFetchProbability(const ObjectPrefetchStats& s) {
  s.validate();
  const double exponent = s.aRate * s.lI;
  if (s.pI == 0.0 || exponent == 0.0) return 0.0;
  if (s.pI == 1.0) return 1.0;
  // 1 - exp(al * log(1-p)), accurate for tiny p.
  return -std::expm1(exponent * std::log1p(-s.pI));
}

double apiValue(const ObjectPrefetchStats& s) {
  s.validate();
  if (s.aRate == 0.0 || s.pI == 0.0) return 0.0;
  return s.aRate * s.pI * s.lI;
}

double freshnessFactor(const ObjectPrefetchStats& s) {
  const double v = apiValue(s);
  if (std::isinf(v)) return 1.0;
  return v / (v + 1.0);
}

double schemeScore(const ObjectPrefetchStats& s, PrefetchScheme scheme) {
  switch (scheme) {
    case PrefetchScheme::goodfetch:
      return goodFetchProbability(s);
    case PrefetchScheme::api:
      return apiValue(s);
    case PrefetchScheme::lifetime:
      break;
  }
  throw ConfigError("the lifetime scheme has no threshold score");
}

std::vector<Selected> selectPrefetchSet(std::span<const ObjectPrefetchStats> stats, PrefetchScheme scheme,
                                        double threshold) {
  if (!std::isfinite(threshold)) throw ConfigError("prefetch threshold must be finite");
  std::vector<Selected> out;
  for (const auto& s : stats) {
    const double score = schemeScore(s, scheme);
    if (score > threshold) out.push_back({s.objectId, score});
  }
  std::stable_sort(out.begin(), out.end(), [](const Selected& a, const Selected& b) { return a.score > b.score; });
  return out;
}

LifetimeDecision lifetimeThreshold(const ObjectPrefetchStats& s, double now) {
  if (now < s.installTime) throw DomainError("evaluation time precedes install time");
  if (s.modCount == 0) return {};
  const double tp = (now - s.installTime) / static_cast<double>(s.modCount);
  return {now - s.lastModified > tp, tp};
}

PrefetchAgent::PrefetchAgent(const sim::PrefetchConfig& config) : config_(config) {
  if (config_.scheme != PrefetchScheme::lifetime && !std::isfinite(config_.threshold))
    throw ConfigError("prefetch threshold must be finite");
}

PrefetchAgent::Entry& PrefetchAgent::entry(ObjectKey key) {
  if (key >= entries_.size()) entries_.resize(std::max<std::size_t>(key + 1, entries_.size() * 2));
  return entries_[key];
}

void PrefetchAgent::start(double now) {
  if (started_) return;
  started_ = true;
  installTime_ = now;
}

ObjectPrefetchStats PrefetchAgent::statsFor(ObjectKey key, double now) const {
  ObjectPrefetchStats s;
  s.installTime = installTime_;
  const double elapsed = started_ ? now - installTime_ : 0.0;
  const Entry e = key < entries_.size() ? entries_[key] : Entry{};
  s.modCount = e.modCount;
  s.lastModified = e.fetchedAt;
  s.pI = requests_ ? static_cast<double>(e.requests) / static_cast<double>(requests_) : 0.0;
  s.aRate = elapsed > 0.0 ? static_cast<double>(requests_) / elapsed : 0.0;
  s.lI = e.modCount && elapsed > 0.0 ? elapsed / e.modCount : std::numeric_limits<double>::infinity();
  return s;
}

bool PrefetchAgent::decide(ObjectKey key, double now) const {
  const ObjectPrefetchStats s = statsFor(key, now);
  if (config_.scheme == PrefetchScheme::lifetime) return lifetimeThreshold(s, now).fetch;
  if (std::isinf(s.lI)) {
    // Modified within the first instant: no elapsed time to estimate from.
    return false;
  }
  return schemeScore(s, config_.scheme) > config_.threshold;
}

void PrefetchAgent::onRequest(ObjectKey key, double now) {
  start(now);
  ++entry(key).requests;
  ++requests_;
}

bool PrefetchAgent::onModification(ObjectKey key, double now, bool resident) {
  start(now);
  Entry& e = entry(key);
  ++e.modCount;
  if (!resident) return false;
  e.stale = true;
  return decide(key, now);
}

void PrefetchAgent::onFetched(ObjectKey key, double now) {
  Entry& e = entry(key);
  e.resident = true;
  e.stale = false;
  e.fetchedAt = now;
}

void PrefetchAgent::onEvicted(ObjectKey key) {
  Entry& e = entry(key);
  e.resident = false;
  e.stale = false;
}

double PrefetchAgent::tickSeconds() const {
  return config_.scheme == PrefetchScheme::lifetime ? config_.tickSeconds : 0.0;
}

void PrefetchAgent::onTick(double now, std::vector<ObjectKey>& refresh) {
  // Fresh copies are skipped: a revalidation of an unchanged object moves no body bytes.
  for (ObjectKey key = 0; key < entries_.size(); ++key) {
    const Entry& e = entries_[key];
    if (e.resident && e.stale && decide(key, now)) refresh.push_back(key);
  }
}

sim::SimReport simulateWithPrefetch(const sim::CompiledTrace& trace, const sim::CacheConfig& config,
                                    PrefetchScheme scheme) {
  if (!config.prefetch) throw ConfigError("prefetch settings missing from cache config");
  sim::PrefetchConfig pc = *config.prefetch;
  pc.scheme = scheme;
  return sim::simulate(trace, config, std::make_unique<PrefetchAgent>(pc));
}

sim::SimReport simulateWithPrefetch(std::span<const trace::TraceEvent> events, const sim::CacheConfig& config,
                                    PrefetchScheme scheme) {
  return simulateWithPrefetch(sim::compileTrace(events), config, scheme);
}

}  // namespace zipfcache::prefetch
