#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace zipfcache::sim {

// Dense per-run object index assigned by compileTrace.
using ObjectKey = std::uint32_t;

enum class FetchCause { demand, prefetch };

struct PartOccupancy {
  std::uint64_t kernel = 0;
  std::uint64_t accessory = 0;
};

// Replacement policy driven by the simulator. Sizes are in capacity units.
//
// Staging protocol: when onMissAdmit returns true, or after
// onModificationFetched, the object is staged. The engine then calls
// chooseVictims exactly once; the returned victims are forgotten by the
// policy, never include the staged object, and free at least bytesNeeded
// (the policy may free more to honor its own part limits). The staged object
// is resident once chooseVictims returns. nullopt means no feasible victim
// set exists and aborts the run.
//
// Policies must not read wall-clock time; `now` is the event timestamp.
class ReplacementPolicy {
 public:
  virtual ~ReplacementPolicy() = default;

  virtual std::string_view id() const = 0;

  // Request for a resident, fresh object.
  virtual void onHit(ObjectKey key, double now) = 0;

  // Cacheable miss on an absent object; returns whether to store it.
  virtual bool onMissAdmit(ObjectKey key, std::uint64_t size, double now) = 0;

  virtual std::optional<std::vector<ObjectKey>> chooseVictims(std::uint64_t bytesNeeded, double now) = 0;

  // A resident copy was replaced by the origin's newer version.
  virtual void onModificationFetched(ObjectKey key, std::uint64_t size, double now, FetchCause cause) = 0;

  // Periodic housekeeping (the engine calls it once per day boundary).
  virtual void onExpireStats(double now) = 0;

  // Drops a resident object outside the victim protocol.
  virtual void erase(ObjectKey key) = 0;

  virtual std::optional<PartOccupancy> occupancy() const { return std::nullopt; }
};

}  // namespace zipfcache::sim
