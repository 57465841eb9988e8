#pragma once

#include <list>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "zipfcache/sim/policy.hpp"

namespace zipfcache::policies {

// Least recently requested first. A demand refetch counts as a request; a
// prefetch refresh leaves the order alone.
class LruPolicy final : public sim::ReplacementPolicy {
 public:
  std::string_view id() const override { return "lru"; }
  void onHit(sim::ObjectKey key, double now) override;
  bool onMissAdmit(sim::ObjectKey key, std::uint64_t size, double now) override;
  std::optional<std::vector<sim::ObjectKey>> chooseVictims(std::uint64_t bytesNeeded, double now) override;
  void onModificationFetched(sim::ObjectKey key, std::uint64_t size, double now, sim::FetchCause cause) override;
  void onExpireStats(double) override {}
  void erase(sim::ObjectKey key) override;

 private:
  struct Slot {
    std::list<sim::ObjectKey>::iterator pos;
    std::uint64_t size;
  };
  std::list<sim::ObjectKey> order_;  // front = most recent
  std::unordered_map<sim::ObjectKey, Slot> slots_;
  std::optional<sim::ObjectKey> staged_;
};

// Oldest admission first; requests never reorder.
class FifoPolicy final : public sim::ReplacementPolicy {
 public:
  std::string_view id() const override { return "fifo"; }
  void onHit(sim::ObjectKey, double) override {}
  bool onMissAdmit(sim::ObjectKey key, std::uint64_t size, double now) override;
  std::optional<std::vector<sim::ObjectKey>> chooseVictims(std::uint64_t bytesNeeded, double now) override;
  void onModificationFetched(sim::ObjectKey key, std::uint64_t size, double now, sim::FetchCause cause) override;
  void onExpireStats(double) override {}
  void erase(sim::ObjectKey key) override;

 private:
  struct Slot {
    std::list<sim::ObjectKey>::iterator pos;
    std::uint64_t size;
  };
  std::list<sim::ObjectKey> order_;  // front = newest
  std::unordered_map<sim::ObjectKey, Slot> slots_;
  std::optional<sim::ObjectKey> staged_;
};

// Fewest requests since admission first, ties by least recent request.
class LfuPolicy final : public sim::ReplacementPolicy {
 public:
  std::string_view id() const override { return "lfu"; }
  void onHit(sim::ObjectKey key, double now) override;
  bool onMissAdmit(sim::ObjectKey key, std::uint64_t size, double now) override;
  std::optional<std::vector<sim::ObjectKey>> chooseVictims(std::uint64_t bytesNeeded, double now) override;
  void onModificationFetched(sim::ObjectKey key, std::uint64_t size, double now, sim::FetchCause cause) override;
  void onExpireStats(double) override {}
  void erase(sim::ObjectKey key) override;

 private:
  // (count, recency tick, key); begin() is the next victim.
  using Rank = std::tuple<std::uint64_t, std::uint64_t, sim::ObjectKey>;
  struct Slot {
    std::uint64_t count;
    std::uint64_t tick;
    std::uint64_t size;
  };
  void touch(sim::ObjectKey key, bool countIt);

  std::set<Rank> ranks_;
  std::unordered_map<sim::ObjectKey, Slot> slots_;
  std::uint64_t clock_ = 0;
  std::optional<sim::ObjectKey> staged_;
};

}  // namespace zipfcache::policies
