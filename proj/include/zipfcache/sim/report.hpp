#pragma once

#include <cstdint>

namespace zipfcache::sim {

struct SimReport {
  std::uint64_t requests = 0;           // K
  std::uint64_t cacheableRequests = 0;  // k
  std::uint64_t hits = 0;
  double hitRatio = 0.0;      // hits / requests
  double byteHitRatio = 0.0;  // hit bytes / requested bytes
  std::uint64_t uniqueDocs = 0;   // p: distinct cacheable objects requested
  std::uint64_t twoPlusDocs = 0;  // empirical M: those requested at least twice
  std::uint64_t evictions = 0;
  std::uint64_t staleRefetches = 0;
  std::uint64_t prefetchFetches = 0;
  std::uint64_t demandBytes = 0;
  std::uint64_t prefetchBytes = 0;
  // End-of-run occupancy in capacity units. ZBS reports its real parts; other
  // policies split residents by whether they were requested twice since admission.
  std::uint64_t kernelOccupancyBytes = 0;
  std::uint64_t accessoryOccupancyBytes = 0;

  std::uint64_t originBytes() const { return demandBytes + prefetchBytes; }
  bool operator==(const SimReport&) const = default;
};

}  // namespace zipfcache::sim
