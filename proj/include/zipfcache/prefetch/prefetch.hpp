#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "zipfcache/sim/config.hpp"
#include "zipfcache/sim/report.hpp"
#include "zipfcache/sim/simulator.hpp"
#include "zipfcache/trace/event.hpp"

namespace zipfcache::prefetch {

struct ObjectPrefetchStats {
  std::string objectId;
  double pI = 0.0;           // access probability
  double lI = 1.0;           // lifetime, seconds (may be +inf)
  double aRate = 0.0;        // aggregate requests per second
  std::uint32_t modCount = 0;  // N^i
  double installTime = 0.0;  // T_ins
  double lastModified = 0.0;

  // Throws DomainError unless pI in [0,1], lI > 0, aRate >= 0.
  void validate() const;
};

// 1 - (1 - p)^(a l): chance of an access before the object changes.
double goodFetchProbability(const ObjectPrefetchStats& s);

// a p l: expected accesses during one lifetime.
double apiValue(const ObjectPrefetchStats& s);

// v / (v + 1) with v = a p l; 1 when v is infinite.
double freshnessFactor(const ObjectPrefetchStats& s);

// Score used by a threshold scheme; lifetime has no score and throws ConfigError.
double schemeScore(const ObjectPrefetchStats& s, sim::PrefetchScheme scheme);

struct Selected {
  std::string objectId;
  double score = 0.0;
};

/// Objects whose score strictly exceeds `threshold`, highest score first
/// (input order among equal scores). Throws ConfigError for a non-finite
/// threshold or the lifetime scheme.
std::vector<Selected> selectPrefetchSet(std::span<const ObjectPrefetchStats> stats, sim::PrefetchScheme scheme,
                                        double threshold);

struct LifetimeDecision {
  bool fetch = false;
  double threshold = std::numeric_limits<double>::infinity();  // T_p, seconds
};

/// T_p = (now - installTime) / N; fetch iff now - lastModified > T_p.
/// N = 0 never fetches. Throws DomainError if now < installTime.
LifetimeDecision lifetimeThreshold(const ObjectPrefetchStats& s, double now);

// RefreshAgent that estimates per-object statistics from what it has seen:
// p_i = requests_i / requests, a = requests / elapsed, l_i = elapsed / N^i,
// with elapsed measured from the first event (T_ins).
//
// goodfetch/api: at each modification of a resident object, refetch it when
// its score exceeds the threshold. lifetime: same trigger using
// lifetimeThreshold with T_z measured from the cached copy's fetch time, plus
// a periodic pass over resident stale copies.
class PrefetchAgent final : public sim::RefreshAgent {
 public:
  explicit PrefetchAgent(const sim::PrefetchConfig& config);

  void onRequest(sim::ObjectKey key, double now) override;
  bool onModification(sim::ObjectKey key, double now, bool resident) override;
  void onFetched(sim::ObjectKey key, double now) override;
  void onEvicted(sim::ObjectKey key) override;
  double tickSeconds() const override;
  void onTick(double now, std::vector<sim::ObjectKey>& refresh) override;

  ObjectPrefetchStats statsFor(sim::ObjectKey key, double now) const;

 private:
  struct Entry {
    std::uint64_t requests = 0;
    std::uint32_t modCount = 0;
    double fetchedAt = 0.0;
    bool resident = false;
    bool stale = false;
  };
  Entry& entry(sim::ObjectKey key);
  void start(double now);
  bool decide(sim::ObjectKey key, double now) const;

  sim::PrefetchConfig config_;
  std::vector<Entry> entries_;
  std::uint64_t requests_ = 0;
  double installTime_ = 0.0;
  bool started_ = false;
};

/// simulate() with a PrefetchAgent for `scheme`; threshold and tick come from
/// config.prefetch, which must be present (ConfigError otherwise).
sim::SimReport simulateWithPrefetch(const sim::CompiledTrace& trace, const sim::CacheConfig& config,
                                    sim::PrefetchScheme scheme);
sim::SimReport simulateWithPrefetch(std::span<const trace::TraceEvent> events, const sim::CacheConfig& config,
                                    sim::PrefetchScheme scheme);

}  // namespace zipfcache::prefetch
