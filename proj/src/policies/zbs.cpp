#include "zipfcache/policies/zbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zipfcache/errors.hpp"
#include "zipfcache/kernels/kernels.hpp"

namespace zipfcache::policies {

using sim::FetchCause;
using sim::ObjectKey;

namespace {
constexpr double kDay = 86400.0;
}

double zbsMetric(const KernelEntry& entry, double now, bool byteMode) {
  if (entry.theta == 0) throw std::logic_error("kernel entry with theta 0");
  const double weight = byteMode ? static_cast<double>(entry.theta) * static_cast<double>(entry.sizeBytes)
                                 : static_cast<double>(entry.theta);
  return (now - entry.lastModified) / weight;
}

ZbsPolicy::ZbsPolicy(std::uint64_t capacity, double accessoryFraction, double statsRetentionSeconds, bool byteMode)
    : capacity_(capacity),
      accessoryBudget_(static_cast<std::uint64_t>(std::floor(accessoryFraction * static_cast<double>(capacity)))),
      windowDays_(std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(statsRetentionSeconds / kDay)))),
      byteMode_(byteMode) {
  if (capacity == 0) throw ConfigError("capacity must be positive");
  if (!(accessoryFraction > 0.0 && accessoryFraction <= 1.0)) throw ConfigError("accessory fraction out of range");
  if (!(statsRetentionSeconds > 0.0)) throw ConfigError("stats retention must be positive");
}

ZbsPolicy::ZbsPolicy(const sim::CacheConfig& config)
    : ZbsPolicy(config.capacityBytes, config.accessoryFraction, config.resolvedStatsRetention(),
                config.byteMetricMode || config.policyId == "zbs-byte") {}

std::int64_t ZbsPolicy::day(double now) const { return static_cast<std::int64_t>(std::floor(now / kDay)); }

void ZbsPolicy::dropOld(Stats& s, std::int64_t today) const {
  while (!s.buckets.empty() && s.buckets.front().first <= today - windowDays_) {
    s.sum -= s.buckets.front().second;
    s.buckets.pop_front();
  }
}

ZbsPolicy::Stats& ZbsPolicy::recordRequest(ObjectKey key, double now) {
  auto [it, inserted] = stats_.try_emplace(key);
  Stats& s = it->second;
  if (inserted) s.firstSeen = now;
  const std::int64_t today = day(now);
  dropOld(s, today);
  if (!s.buckets.empty() && s.buckets.back().first == today)
    ++s.buckets.back().second;
  else
    s.buckets.emplace_back(today, 1);
  ++s.sum;
  s.lastSeen = now;
  return s;
}

std::uint32_t ZbsPolicy::thetaOf(ObjectKey key) const {
  const auto it = stats_.find(key);
  return std::max<std::uint32_t>(1, it == stats_.end() ? 0 : it->second.sum);
}

ZbsPolicy::Residence& ZbsPolicy::residence(ObjectKey key) {
  if (key >= residence_.size()) residence_.resize(std::max<std::size_t>(key + 1, residence_.size() * 2));
  return residence_[key];
}

void ZbsPolicy::refreshWeight(ObjectKey key) {
  const Residence& r = residence_[key];
  const std::uint32_t theta = thetaOf(key);
  kernelTheta_[r.kernelIndex] = theta;
  double weight = static_cast<double>(theta);
  if (byteMode_) weight *= static_cast<double>(r.size);
  kernelInvWeight_[r.kernelIndex] = 1.0 / weight;
}

void ZbsPolicy::linkKernel(ObjectKey key, double lastModified) {
  Residence& r = residence_[key];
  r.part = Part::kernel;
  r.kernelIndex = kernelKeys_.size();
  kernelKeys_.push_back(key);
  kernelLastModified_.push_back(lastModified);
  kernelInvWeight_.push_back(0.0);
  kernelSequence_.push_back(r.sequence);
  kernelTheta_.push_back(1);
  kernelUsed_ += r.size;
  refreshWeight(key);
}

void ZbsPolicy::unlinkKernel(ObjectKey key) {
  Residence& r = residence_[key];
  const std::size_t i = r.kernelIndex;
  const std::size_t last = kernelKeys_.size() - 1;
  if (i != last) {
    kernelKeys_[i] = kernelKeys_[last];
    kernelLastModified_[i] = kernelLastModified_[last];
    kernelInvWeight_[i] = kernelInvWeight_[last];
    kernelSequence_[i] = kernelSequence_[last];
    kernelTheta_[i] = kernelTheta_[last];
    residence_[kernelKeys_[i]].kernelIndex = i;
  }
  kernelKeys_.pop_back();
  kernelLastModified_.pop_back();
  kernelInvWeight_.pop_back();
  kernelSequence_.pop_back();
  kernelTheta_.pop_back();
  kernelUsed_ -= r.size;
  r.part = Part::none;
}

void ZbsPolicy::linkAccessory(ObjectKey key) {
  Residence& r = residence_[key];
  r.part = Part::accessory;
  fifo_.push_front(key);
  r.fifoPos = fifo_.begin();
  accessoryUsed_ += r.size;
}

void ZbsPolicy::unlinkAccessory(ObjectKey key) {
  Residence& r = residence_[key];
  fifo_.erase(r.fifoPos);
  accessoryUsed_ -= r.size;
  r.part = Part::none;
}

void ZbsPolicy::unlink(ObjectKey key) {
  if (key >= residence_.size()) return;
  switch (residence_[key].part) {
    case Part::kernel:
      unlinkKernel(key);
      break;
    case Part::accessory:
      unlinkAccessory(key);
      break;
    case Part::none:
      break;
  }
}

ObjectKey ZbsPolicy::evictKernel(double now) {
  const std::size_t i = kernels::argmaxAgeRatio(kernelLastModified_, kernelInvWeight_, kernelSequence_, now);
  const ObjectKey key = kernelKeys_[i];
  unlinkKernel(key);
  residence_[key].size = 0;
  return key;
}

ObjectKey ZbsPolicy::evictAccessory() {
  const ObjectKey key = fifo_.back();
  unlinkAccessory(key);
  residence_[key].size = 0;
  return key;
}

void ZbsPolicy::onHit(ObjectKey key, double now) {
  const Stats& s = recordRequest(key, now);
  Residence& r = residence(key);
  if (r.part == Part::kernel) {
    refreshWeight(key);
  } else if (r.part == Part::accessory && s.sum >= 2) {
    // Same bytes, different part: no eviction needed.
    unlinkAccessory(key);
    linkKernel(key, r.admittedAt);
  }
}

bool ZbsPolicy::onMissAdmit(ObjectKey key, std::uint64_t size, double now) {
  const Stats& s = recordRequest(key, now);
  const Part target = s.sum >= 2 ? Part::kernel : Part::accessory;
  if (target == Part::accessory && size > accessoryBudget_) return false;
  Residence& r = residence(key);
  r.part = Part::none;
  r.size = size;
  r.admittedAt = now;
  r.sequence = nextSequence_++;
  staged_ = Staged{key, target};
  return true;
}

std::optional<std::vector<ObjectKey>> ZbsPolicy::chooseVictims(std::uint64_t bytesNeeded, double now) {
  if (!staged_) throw std::logic_error("zbs: chooseVictims without a staged object");
  const Staged staged = *staged_;
  staged_.reset();
  const Residence& r = residence_[staged.key];

  std::vector<ObjectKey> victims;
  std::uint64_t freed = 0;
  if (staged.target == Part::accessory) {
    while (accessoryUsed_ + r.size > accessoryBudget_) {
      const std::uint64_t size = residence_[fifo_.back()].size;
      victims.push_back(evictAccessory());
      freed += size;
    }
  }
  while (freed < bytesNeeded) {
    if (!kernelKeys_.empty()) {
      const std::uint64_t before = kernelUsed_;
      victims.push_back(evictKernel(now));
      freed += before - kernelUsed_;
    } else if (!fifo_.empty()) {
      const std::uint64_t before = accessoryUsed_;
      victims.push_back(evictAccessory());
      freed += before - accessoryUsed_;
    } else {
      return std::nullopt;
    }
  }

  if (staged.target == Part::accessory) {
    linkAccessory(staged.key);
  } else {
    // A modification refetch restarts T_z; a stats-backed admission starts
    // it at admission time. Both are `now` here.
    linkKernel(staged.key, now);
  }
  return victims;
}

void ZbsPolicy::onModificationFetched(ObjectKey key, std::uint64_t size, double now, FetchCause) {
  unlink(key);
  Residence& r = residence(key);
  r.size = size;
  auto [it, inserted] = stats_.try_emplace(key);
  Stats& s = it->second;
  if (inserted) s.firstSeen = now;
  s.buckets.assign(1, {day(now), 1});
  s.sum = 1;
  s.lastSeen = now;
  ++s.modCount;
  staged_ = Staged{key, Part::kernel};
}

void ZbsPolicy::onExpireStats(double now) {
  const std::int64_t today = day(now);
  for (auto it = stats_.begin(); it != stats_.end();) {
    dropOld(it->second, today);
    const ObjectKey key = it->first;
    const Part p = key < residence_.size() ? residence_[key].part : Part::none;
    if (p == Part::kernel) refreshWeight(key);
    if (it->second.sum == 0 && p == Part::none)
      it = stats_.erase(it);
    else
      ++it;
  }
}

void ZbsPolicy::erase(ObjectKey key) {
  unlink(key);
  if (key < residence_.size()) residence_[key].size = 0;
}

std::optional<sim::PartOccupancy> ZbsPolicy::occupancy() const {
  return sim::PartOccupancy{kernelUsed_, accessoryUsed_};
}

ZbsPolicy::Part ZbsPolicy::part(ObjectKey key) const {
  return key < residence_.size() ? residence_[key].part : Part::none;
}

std::optional<KernelEntry> ZbsPolicy::kernelEntry(ObjectKey key) const {
  if (part(key) != Part::kernel) return std::nullopt;
  const Residence& r = residence_[key];
  const std::size_t i = r.kernelIndex;
  return KernelEntry{key, kernelTheta_[i], kernelLastModified_[i], r.size, r.admittedAt};
}

std::uint32_t ZbsPolicy::statsTheta(ObjectKey key) const {
  const auto it = stats_.find(key);
  return it == stats_.end() ? 0 : it->second.sum;
}

std::uint32_t ZbsPolicy::modCount(ObjectKey key) const {
  const auto it = stats_.find(key);
  return it == stats_.end() ? 0 : it->second.modCount;
}

}  // namespace zipfcache::policies
