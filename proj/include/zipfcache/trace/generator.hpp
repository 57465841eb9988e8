#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zipfcache/trace/event.hpp"

namespace zipfcache::trace {

enum class ArrivalProcess { poisson, constant };

struct SyntheticSpec {
  std::uint64_t nObjects = 10000;
  double alpha = 0.8;
  double requestRate = 10.0;  // lambda N, requests/second
  double duration = 0.0;      // seconds
  double meanDocSize = 10000.0;
  double sizeSpread = 1.0;  // log-space standard deviation of sizes
  // Ranks <= boundary change at muP, the rest at muU. Defaults to the
  // two-request special point of the law at the expected request count.
  std::optional<std::uint64_t> popularBoundary;
  double muP = 0.0;  // 1/seconds
  double muU = 0.0;
  double pC = 1.0;  // probability that an object is cacheable
  std::uint64_t seed = 1;
  ArrivalProcess arrivals = ArrivalProcess::poisson;

  void validate() const;
  std::uint64_t resolvedBoundary() const;
};

/// Synthetic Zipf workload with per-object modification processes.
///
/// Draw order, all from one Rng(seed):
///   1. per rank 1..n: initial size, then the cacheable flag;
///   2. request arrivals, each followed by its rank draw (inverse CDF of the
///      discrete law i^-alpha normalized over n);
///   3. per rank 1..n: modification arrivals on [0, duration), each followed
///      by the new size.
/// Requests sort before modifications at equal timestamps. Request sizes are
/// the object's size at that instant. Object ids are "d<rank>".
std::vector<TraceEvent> generateTrace(const SyntheticSpec& spec);

}  // namespace zipfcache::trace
