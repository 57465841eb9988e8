#pragma once

#include <cstdint>
#include <deque>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

#include "zipfcache/sim/config.hpp"
#include "zipfcache/sim/policy.hpp"

namespace zipfcache::policies {

struct KernelEntry {
  sim::ObjectKey objectId = 0;
  std::uint32_t theta = 1;
  double lastModified = 0.0;
  std::uint64_t sizeBytes = 1;  // E_i, in capacity units
  double admittedAt = 0.0;
};

/// T_z/theta, or T_z/(theta*E) in byte mode. Larger is evicted first.
/// Throws std::logic_error for theta == 0.
double zbsMetric(const KernelEntry& entry, double now, bool byteMode);

// Two-part cache driven by long-horizon request statistics.
//
// First-time objects go to a small FIFO accessory part capped at
// accessoryFraction of capacity. A second request within the statistics
// horizon moves an object into the kernel, where the victim is the entry with
// the largest zbsMetric. Statistics outlive residency, so an evicted object
// that returns within the horizon goes straight to the kernel. A copy
// refetched after a modification lands in the kernel with theta reset to 1.
//
// theta is counted in whole days: requests are bucketed by day index and a
// bucket leaves the window once it is ceil(t_s / 1 day) days old.
class ZbsPolicy final : public sim::ReplacementPolicy {
 public:
  enum class Part { none, accessory, kernel };

  ZbsPolicy(std::uint64_t capacity, double accessoryFraction, double statsRetentionSeconds, bool byteMode);
  explicit ZbsPolicy(const sim::CacheConfig& config);

  std::string_view id() const override { return byteMode_ ? "zbs-byte" : "zbs"; }
  void onHit(sim::ObjectKey key, double now) override;
  bool onMissAdmit(sim::ObjectKey key, std::uint64_t size, double now) override;
  std::optional<std::vector<sim::ObjectKey>> chooseVictims(std::uint64_t bytesNeeded, double now) override;
  void onModificationFetched(sim::ObjectKey key, std::uint64_t size, double now, sim::FetchCause cause) override;
  void onExpireStats(double now) override;
  void erase(sim::ObjectKey key) override;
  std::optional<sim::PartOccupancy> occupancy() const override;

  Part part(sim::ObjectKey key) const;
  std::optional<KernelEntry> kernelEntry(sim::ObjectKey key) const;
  // Requests inside the window as of the last update (0 when untracked).
  std::uint32_t statsTheta(sim::ObjectKey key) const;
  std::uint32_t modCount(sim::ObjectKey key) const;
  bool hasStats(sim::ObjectKey key) const { return stats_.count(key) != 0; }
  std::uint64_t accessoryBudget() const { return accessoryBudget_; }
  std::uint64_t accessoryUsed() const { return accessoryUsed_; }
  std::uint64_t kernelUsed() const { return kernelUsed_; }
  std::size_t kernelCount() const { return kernelKeys_.size(); }

 private:
  struct Stats {
    std::deque<std::pair<std::int64_t, std::uint32_t>> buckets;  // (day, requests)
    std::uint32_t sum = 0;
    double firstSeen = 0.0;
    double lastSeen = 0.0;
    std::uint32_t modCount = 0;
  };
  struct Residence {
    Part part = Part::none;
    std::uint64_t size = 0;
    double admittedAt = 0.0;
    double sequence = 0.0;  // admission order, breaks metric ties
    std::size_t kernelIndex = 0;
    std::list<sim::ObjectKey>::iterator fifoPos;
  };
  struct Staged {
    sim::ObjectKey key;
    Part target;
  };

  std::int64_t day(double now) const;
  Stats& recordRequest(sim::ObjectKey key, double now);
  void dropOld(Stats& s, std::int64_t today) const;
  std::uint32_t thetaOf(sim::ObjectKey key) const;
  Residence& residence(sim::ObjectKey key);
  void linkKernel(sim::ObjectKey key, double now);
  void unlinkKernel(sim::ObjectKey key);
  void linkAccessory(sim::ObjectKey key);
  void unlinkAccessory(sim::ObjectKey key);
  void unlink(sim::ObjectKey key);
  void refreshWeight(sim::ObjectKey key);
  sim::ObjectKey evictKernel(double now);
  sim::ObjectKey evictAccessory();

  std::uint64_t capacity_;
  std::uint64_t accessoryBudget_;
  std::int64_t windowDays_;
  bool byteMode_;

  std::unordered_map<sim::ObjectKey, Stats> stats_;
  std::vector<Residence> residence_;
  std::uint64_t accessoryUsed_ = 0;
  std::uint64_t kernelUsed_ = 0;
  double nextSequence_ = 0.0;

  std::list<sim::ObjectKey> fifo_;  // front = newest
  // Kernel entries as parallel arrays for the victim scan.
  std::vector<sim::ObjectKey> kernelKeys_;
  std::vector<double> kernelLastModified_;
  std::vector<double> kernelInvWeight_;
  std::vector<double> kernelSequence_;
  std::vector<std::uint32_t> kernelTheta_;

  std::optional<Staged> staged_;
};

}  // namespace zipfcache::policies
