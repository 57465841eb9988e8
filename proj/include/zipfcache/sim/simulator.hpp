#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zipfcache/sim/config.hpp"
#include "zipfcache/sim/policy.hpp"
#include "zipfcache/sim/report.hpp"
#include "zipfcache/trace/event.hpp"

namespace zipfcache::sim {

struct CompiledEvent {
  double time = 0.0;
  ObjectKey key = 0;
  std::uint64_t size = 1;
  trace::EventKind kind = trace::EventKind::request;
  bool cacheable = true;
};

// Event stream with object ids interned to dense keys in first-seen order.
struct CompiledTrace {
  std::vector<CompiledEvent> events;
  std::vector<std::string> names;
};

/// Throws InputError when timestamps decrease or a size is zero.
CompiledTrace compileTrace(std::span<const trace::TraceEvent> events);

// Optional layer that keeps selected objects fresh (see prefetch module).
class RefreshAgent {
 public:
  virtual ~RefreshAgent() = default;

  virtual void onRequest(ObjectKey key, double now) = 0;

  // Every modification event. Returning true for a resident object makes the
  // engine refetch it immediately, charged to prefetch bytes.
  virtual bool onModification(ObjectKey key, double now, bool resident) = 0;

  // The engine obtained a fresh copy (demand miss, stale refetch or refresh).
  virtual void onFetched(ObjectKey key, double now) = 0;

  virtual void onEvicted(ObjectKey key) = 0;

  // Periodic hook; append resident keys to refresh. Zero interval disables it.
  virtual double tickSeconds() const { return 0.0; }
  virtual void onTick(double now, std::vector<ObjectKey>& refresh) = 0;
};

// One simulation run. Strictly sequential; share nothing between instances.
class Simulator {
 public:
  Simulator(const CacheConfig& config, std::unique_ptr<ReplacementPolicy> policy,
            std::unique_ptr<RefreshAgent> agent = nullptr);

  void process(const CompiledEvent& e);
  void run(std::span<const CompiledEvent> events);

  SimReport report() const;

  const ReplacementPolicy& policy() const { return *policy_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t capacity() const { return capacity_; }
  // Misses on objects larger than the whole cache; never admitted.
  std::uint64_t admissionErrors() const { return admissionErrors_; }
  bool resident(ObjectKey key) const;
  bool stale(ObjectKey key) const;

 private:
  struct ObjectState {
    std::uint64_t residentSize = 0;  // capacity units
    std::uint64_t originBytes = 0;   // size of the latest version seen
    std::uint32_t requests = 0;      // cacheable requests over the run
    std::uint32_t requestsSinceAdmit = 0;
    bool isResident = false;
    bool isStale = false;
  };

  ObjectState& state(ObjectKey key);
  std::uint64_t accounted(std::uint64_t bytes) const;
  void handleRequest(const CompiledEvent& e);
  void handleModification(const CompiledEvent& e);
  void runTicks(double upTo);
  void refetch(ObjectKey key, std::uint64_t bytes, double now, FetchCause cause);
  void applyVictims(ObjectKey staged, std::uint64_t bytesNeeded, double now);
  void dropResident(ObjectKey key);

  CacheConfig config_;
  std::unique_ptr<ReplacementPolicy> policy_;
  std::unique_ptr<RefreshAgent> agent_;
  std::uint64_t capacity_;
  std::uint64_t used_ = 0;
  std::vector<ObjectState> objects_;
  SimReport counters_;
  std::uint64_t hitBytes_ = 0;
  std::uint64_t requestBytes_ = 0;
  std::uint64_t admissionErrors_ = 0;
  double lastTime_ = -1e300;
  double nextExpiry_ = 0.0;
  double nextTick_ = 0.0;
  bool started_ = false;
  std::vector<ObjectKey> refreshScratch_;
};

/// Policy looked up from config.policyId; prefetch settings are ignored here
/// (see prefetch::simulateWithPrefetch).
SimReport simulate(std::span<const trace::TraceEvent> events, const CacheConfig& config);
SimReport simulate(const CompiledTrace& trace, const CacheConfig& config,
                   std::unique_ptr<RefreshAgent> agent = nullptr);

struct SweepPoint {
  std::uint64_t capacity = 0;
  SimReport report;
};

using Runner = std::function<SimReport(const CompiledTrace&, const CacheConfig&)>;

/// Independent runs of `runner` (default: simulate) per capacity, returned in
/// input order. Sizes must be positive and nondecreasing. Runs execute in
/// parallel when `parallel` is set.
std::vector<SweepPoint> sweepSizes(const CompiledTrace& trace, const CacheConfig& configTemplate,
                                   std::span<const std::uint64_t> sizes, Runner runner = {},
                                   bool parallel = false);
std::vector<SweepPoint> sweepSizes(std::span<const trace::TraceEvent> events, const CacheConfig& configTemplate,
                                   std::span<const std::uint64_t> sizes);

}  // namespace zipfcache::sim
