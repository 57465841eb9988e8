#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zipfcache/trace/event.hpp"

namespace zipfcache::trace {

struct RankedCount {
  std::string objectId;
  std::uint64_t count = 0;
};

/// Request counts per object, descending; equal counts ordered by id.
std::vector<RankedCount> popularityHistogram(std::span<const TraceEvent> events);

std::vector<std::uint64_t> countsOf(std::span<const RankedCount> histogram);

inline constexpr std::uint64_t kLogLogMinCount = 20;

/// Log-log exponent over the leading ranks requested at least
/// kLogLogMinCount times; low counts are dominated by sampling noise and
/// flatten the slope. Uses every nonzero rank when fewer than ten qualify.
/// nullopt when no fit is possible.
std::optional<double> empiricalAlpha(std::span<const std::uint64_t> countsDescending);

struct Lifetimes {
  std::optional<double> tU;    // mean (window end - request time) over once-requested objects
  std::optional<double> tEff;  // mean first-to-second request gap over objects reaching two requests
};

/// Lifetime statistics over [t0, t0 + windowSeconds], t0 the first event's
/// timestamp. Throws InputError when the window is negative or longer than
/// the stream span.
Lifetimes lifetimeStats(std::span<const TraceEvent> events, double windowSeconds);

struct WindowCounts {
  std::uint64_t requests = 0;
  std::uint64_t unique = 0;   // p over the window
  std::uint64_t twoPlus = 0;  // M over the window: objects requested at least twice
};

WindowCounts windowCounts(std::span<const TraceEvent> events, double windowSeconds);

struct TraceSummary {
  std::uint64_t requests = 0;           // K
  std::uint64_t cacheableRequests = 0;  // k
  std::uint64_t modifications = 0;
  std::uint64_t uniqueCacheable = 0;    // p
  std::uint64_t twoPlusCacheable = 0;   // M
  // Requests to twice-or-more requested cacheable objects after each one's
  // first request (= k - p): what an unbounded cache hits on a static Web.
  std::uint64_t repeatRequests = 0;
  std::uint64_t footprintBytes = 0;  // sum over unique cacheable objects of the first-seen size
  std::uint64_t requestBytes = 0;
  double firstTimestamp = 0.0;
  double lastTimestamp = 0.0;

  double span() const { return lastTimestamp - firstTimestamp; }
};

TraceSummary summarize(std::span<const TraceEvent> events);

}  // namespace zipfcache::trace
