#include "zipfcache/trace/stats.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"

namespace zipfcache::trace {

std::vector<RankedCount> popularityHistogram(std::span<const TraceEvent> events) {
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& e : events)
    if (e.isRequest()) ++counts[e.objectId];
  std::vector<RankedCount> out;
  out.reserve(counts.size());
  for (const auto& [id, c] : counts) out.push_back({std::string(id), c});
  std::sort(out.begin(), out.end(), [](const RankedCount& a, const RankedCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.objectId < b.objectId;
  });
  return out;
}

std::vector<std::uint64_t> countsOf(std::span<const RankedCount> histogram) {
  std::vector<std::uint64_t> out;
  out.reserve(histogram.size());
  for (const auto& h : histogram) out.push_back(h.count);
  return out;
}

namespace {

struct FirstTwo {
  double first = 0.0;
  double second = 0.0;
  std::uint64_t count = 0;
};

double windowEnd(std::span<const TraceEvent> events, double windowSeconds) {
  if (!(windowSeconds >= 0.0)) throw InputError("window must be nonnegative");
  if (events.empty()) return 0.0;
  const double span = events.back().timestamp - events.front().timestamp;
  if (windowSeconds > span) throw InputError("window exceeds the stream span");
  return events.front().timestamp + windowSeconds;
}

std::unordered_map<std::string_view, FirstTwo> firstTwoRequests(std::span<const TraceEvent> events, double end) {
  std::unordered_map<std::string_view, FirstTwo> seen;
  for (const auto& e : events) {
    if (e.timestamp > end) break;
    if (!e.isRequest()) continue;
    auto& s = seen[e.objectId];
    if (s.count == 0)
      s.first = e.timestamp;
    else if (s.count == 1)
      s.second = e.timestamp;
    ++s.count;
  }
  return seen;
}

}  // namespace

Lifetimes lifetimeStats(std::span<const TraceEvent> events, double windowSeconds) {
  const double end = windowEnd(events, windowSeconds);
  Lifetimes out;
  double onceSum = 0.0;
  double gapSum = 0.0;
  std::uint64_t once = 0;
  std::uint64_t twice = 0;
  for (const auto& [id, s] : firstTwoRequests(events, end)) {
    if (s.count == 1) {
      onceSum += end - s.first;
      ++once;
    } else {
      gapSum += s.second - s.first;
      ++twice;
    }
  }
  if (once) out.tU = onceSum / static_cast<double>(once);
  if (twice) out.tEff = gapSum / static_cast<double>(twice);
  return out;
}

WindowCounts windowCounts(std::span<const TraceEvent> events, double windowSeconds) {
  const double end = windowEnd(events, windowSeconds);
  WindowCounts wc;
  for (const auto& [id, s] : firstTwoRequests(events, end)) {
    ++wc.unique;
    if (s.count >= 2) ++wc.twoPlus;
    wc.requests += s.count;
  }
  return wc;
}

TraceSummary summarize(std::span<const TraceEvent> events) {
  TraceSummary s;
  if (events.empty()) return s;
  s.firstTimestamp = events.front().timestamp;
  s.lastTimestamp = events.back().timestamp;
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& e : events) {
    if (!e.isRequest()) {
      ++s.modifications;
      continue;
    }
    ++s.requests;
    s.requestBytes += e.sizeBytes;
    if (!e.cacheable) continue;
    ++s.cacheableRequests;
    auto [it, inserted] = counts.try_emplace(e.objectId, 0);
    if (inserted) s.footprintBytes += e.sizeBytes;
    ++it->second;
  }
  s.uniqueCacheable = counts.size();
  for (const auto& [id, c] : counts)
    if (c >= 2) ++s.twoPlusCacheable;
  s.repeatRequests = s.cacheableRequests - s.uniqueCacheable;
  return s;
}

std::optional<double> empiricalAlpha(std::span<const std::uint64_t> countsDescending) {
  std::size_t ranks = 0;
  while (ranks < countsDescending.size() && countsDescending[ranks] >= kLogLogMinCount) ++ranks;
  if (ranks < 10) ranks = countsDescending.size();
  try {
    return analytic::fitAlphaLogLog(countsDescending, ranks);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

}  // namespace zipfcache::trace
