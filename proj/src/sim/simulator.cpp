#include "zipfcache/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string_view>
#include <thread>
#include <unordered_map>

#include "zipfcache/errors.hpp"
#include "zipfcache/policies/registry.hpp"

namespace zipfcache::sim {

namespace {

constexpr double kDay = 86400.0;

double nextBoundary(double t, double interval) { return (std::floor(t / interval) + 1.0) * interval; }

}  // namespace

CompiledTrace compileTrace(std::span<const trace::TraceEvent> events) {
  CompiledTrace out;
  out.events.reserve(events.size());
  std::unordered_map<std::string_view, ObjectKey> ids;
  double last = -INFINITY;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.timestamp < last) throw InputError("events not sorted by timestamp at index " + std::to_string(i));
    if (e.sizeBytes == 0) throw InputError("zero-size event at index " + std::to_string(i));
    last = e.timestamp;
    auto [it, inserted] = ids.try_emplace(e.objectId, static_cast<ObjectKey>(out.names.size()));
    if (inserted) out.names.push_back(e.objectId);
    out.events.push_back({e.timestamp, it->second, e.sizeBytes, e.kind, e.cacheable});
  }
  return out;
}

Simulator::Simulator(const CacheConfig& config, std::unique_ptr<ReplacementPolicy> policy,
                     std::unique_ptr<RefreshAgent> agent)
    : config_(config), policy_(std::move(policy)), agent_(std::move(agent)), capacity_(config.capacityBytes) {
  config_.validate();
  if (!policy_) throw ConfigError("simulator needs a policy");
}

Simulator::ObjectState& Simulator::state(ObjectKey key) {
  if (key >= objects_.size()) objects_.resize(std::max<std::size_t>(key + 1, objects_.size() * 2));
  return objects_[key];
}

bool Simulator::resident(ObjectKey key) const { return key < objects_.size() && objects_[key].isResident; }

bool Simulator::stale(ObjectKey key) const { return key < objects_.size() && objects_[key].isStale; }

std::uint64_t Simulator::accounted(std::uint64_t bytes) const {
  return config_.capacityUnit == CapacityUnit::objects ? 1 : bytes;
}

void Simulator::run(std::span<const CompiledEvent> events) {
  for (const auto& e : events) process(e);
}

void Simulator::process(const CompiledEvent& e) {
  if (e.time < lastTime_) throw InputError("events not sorted by timestamp");
  if (!started_) {
    started_ = true;
    nextExpiry_ = nextBoundary(e.time, kDay);
    if (agent_ && agent_->tickSeconds() > 0.0) nextTick_ = nextBoundary(e.time, agent_->tickSeconds());
  }
  lastTime_ = e.time;
  runTicks(e.time);
  if (e.kind == trace::EventKind::request)
    handleRequest(e);
  else
    handleModification(e);
}

void Simulator::runTicks(double upTo) {
  const bool ticking = agent_ && agent_->tickSeconds() > 0.0;
  for (;;) {
    const double tick = ticking ? nextTick_ : INFINITY;
    const double boundary = std::min(nextExpiry_, tick);
    if (boundary > upTo) return;
    if (nextExpiry_ <= tick) {
      policy_->onExpireStats(nextExpiry_);
      nextExpiry_ += kDay;
      continue;
    }
    refreshScratch_.clear();
    agent_->onTick(tick, refreshScratch_);
    for (ObjectKey key : refreshScratch_) {
      if (!resident(key)) throw InputError("refresh agent selected a non-resident object");
      refetch(key, objects_[key].originBytes, tick, FetchCause::prefetch);
    }
    nextTick_ += agent_->tickSeconds();
  }
}

void Simulator::handleRequest(const CompiledEvent& e) {
  ++counters_.requests;
  requestBytes_ += e.size;
  if (agent_) agent_->onRequest(e.key, e.time);
  if (!e.cacheable) {
    counters_.demandBytes += e.size;
    return;
  }
  ++counters_.cacheableRequests;
  ObjectState& s = state(e.key);
  ++s.requests;
  s.originBytes = e.size;

  if (s.isResident && !s.isStale) {
    ++counters_.hits;
    hitBytes_ += e.size;
    ++s.requestsSinceAdmit;
    policy_->onHit(e.key, e.time);
    return;
  }
  counters_.demandBytes += e.size;
  if (s.isResident) {
    ++counters_.staleRefetches;
    ++s.requestsSinceAdmit;
    refetch(e.key, e.size, e.time, FetchCause::demand);
    return;
  }
  const std::uint64_t size = accounted(e.size);
  if (size > capacity_) {
    ++admissionErrors_;
    return;
  }
  if (!policy_->onMissAdmit(e.key, size, e.time)) return;
  const std::uint64_t after = used_ + size;
  applyVictims(e.key, after > capacity_ ? after - capacity_ : 0, e.time);
  ObjectState& admitted = objects_[e.key];
  admitted.isResident = true;
  admitted.isStale = false;
  admitted.residentSize = size;
  admitted.requestsSinceAdmit = 1;
  used_ += size;
  if (agent_) agent_->onFetched(e.key, e.time);
}

void Simulator::handleModification(const CompiledEvent& e) {
  state(e.key).originBytes = e.size;
  const bool isRes = resident(e.key);
  const bool refresh = agent_ && agent_->onModification(e.key, e.time, isRes);
  if (!isRes) return;
  if (refresh)
    refetch(e.key, e.size, e.time, FetchCause::prefetch);
  else
    objects_[e.key].isStale = true;
}

void Simulator::refetch(ObjectKey key, std::uint64_t bytes, double now, FetchCause cause) {
  if (cause == FetchCause::prefetch) {
    ++counters_.prefetchFetches;
    counters_.prefetchBytes += bytes;
  }
  ObjectState& s = objects_[key];
  const std::uint64_t size = accounted(bytes);
  if (size > capacity_) {
    ++admissionErrors_;
    policy_->erase(key);
    dropResident(key);
    ++counters_.evictions;
    return;
  }
  policy_->onModificationFetched(key, size, now, cause);
  const std::uint64_t after = used_ - s.residentSize + size;
  applyVictims(key, after > capacity_ ? after - capacity_ : 0, now);
  ObjectState& r = objects_[key];
  used_ = used_ - r.residentSize + size;
  r.residentSize = size;
  r.isStale = false;
  if (agent_) agent_->onFetched(key, now);
}

void Simulator::applyVictims(ObjectKey staged, std::uint64_t bytesNeeded, double now) {
  auto victims = policy_->chooseVictims(bytesNeeded, now);
  if (!victims) throw InfeasibleError("policy " + std::string(policy_->id()) + " cannot free " +
                                      std::to_string(bytesNeeded) + " units at t=" + std::to_string(now));
  std::uint64_t freed = 0;
  for (ObjectKey v : *victims) {
    if (v == staged || !resident(v)) throw InfeasibleError("policy returned an invalid victim");
    freed += objects_[v].residentSize;
    dropResident(v);
    ++counters_.evictions;
  }
  if (freed < bytesNeeded) throw InfeasibleError("policy victims free too little space");
}

void Simulator::dropResident(ObjectKey key) {
  ObjectState& s = objects_[key];
  used_ -= s.residentSize;
  s.residentSize = 0;
  s.isResident = false;
  s.isStale = false;
  s.requestsSinceAdmit = 0;
  if (agent_) agent_->onEvicted(key);
}

SimReport Simulator::report() const {
  SimReport r = counters_;
  r.hitRatio = r.requests ? static_cast<double>(r.hits) / static_cast<double>(r.requests) : 0.0;
  r.byteHitRatio = requestBytes_ ? static_cast<double>(hitBytes_) / static_cast<double>(requestBytes_) : 0.0;
  for (const auto& s : objects_) {
    if (s.requests >= 1) ++r.uniqueDocs;
    if (s.requests >= 2) ++r.twoPlusDocs;
  }
  if (auto occ = policy_->occupancy()) {
    r.kernelOccupancyBytes = occ->kernel;
    r.accessoryOccupancyBytes = occ->accessory;
  } else {
    for (const auto& s : objects_) {
      if (!s.isResident) continue;
      if (s.requestsSinceAdmit >= 2)
        r.kernelOccupancyBytes += s.residentSize;
      else
        r.accessoryOccupancyBytes += s.residentSize;
    }
  }
  return r;
}

SimReport simulate(std::span<const trace::TraceEvent> events, const CacheConfig& config) {
  return simulate(compileTrace(events), config);
}

SimReport simulate(const CompiledTrace& trace, const CacheConfig& config, std::unique_ptr<RefreshAgent> agent) {
  Simulator sim(config, policies::makePolicy(config), std::move(agent));
  sim.run(trace.events);
  return sim.report();
}

std::vector<SweepPoint> sweepSizes(const CompiledTrace& trace, const CacheConfig& configTemplate,
                                   std::span<const std::uint64_t> sizes, Runner runner, bool parallel) {
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw ConfigError("sweep sizes must be positive");
    if (i && sizes[i] < sizes[i - 1]) throw ConfigError("sweep sizes must be ascending");
  }
  if (!runner) runner = [](const CompiledTrace& t, const CacheConfig& c) { return simulate(t, c); };
  auto configFor = [&](std::uint64_t size) {
    CacheConfig c = configTemplate;
    c.capacityBytes = size;
    return c;
  };
  std::vector<SweepPoint> out(sizes.size());
  if (parallel && sizes.size() > 1 && std::thread::hardware_concurrency() > 1) {
    std::vector<std::future<SimReport>> jobs;
    jobs.reserve(sizes.size());
    for (auto size : sizes)
      jobs.push_back(std::async(std::launch::async, [&, c = configFor(size)] { return runner(trace, c); }));
    for (std::size_t i = 0; i < sizes.size(); ++i) out[i] = {sizes[i], jobs[i].get()};
  } else {
    for (std::size_t i = 0; i < sizes.size(); ++i) out[i] = {sizes[i], runner(trace, configFor(sizes[i]))};
  }
  return out;
}

std::vector<SweepPoint> sweepSizes(std::span<const trace::TraceEvent> events, const CacheConfig& configTemplate,
                                   std::span<const std::uint64_t> sizes) {
  return sweepSizes(compileTrace(events), configTemplate, sizes);
}

}  // namespace zipfcache::sim
