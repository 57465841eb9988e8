#include "report_json.hpp"

namespace zipfcache::cli {

nlohmann::ordered_json toJson(const sim::SimReport& r) {
  return {
      {"requests", r.requests},
      {"cacheable_requests", r.cacheableRequests},
      {"hits", r.hits},
      {"hit_ratio", r.hitRatio},
      {"byte_hit_ratio", r.byteHitRatio},
      {"unique_docs", r.uniqueDocs},
      {"two_plus_docs", r.twoPlusDocs},
      {"evictions", r.evictions},
      {"stale_refetches", r.staleRefetches},
      {"prefetch_fetches", r.prefetchFetches},
      {"demand_bytes", r.demandBytes},
      {"prefetch_bytes", r.prefetchBytes},
      {"kernel_occupancy_bytes", r.kernelOccupancyBytes},
      {"accessory_occupancy_bytes", r.accessoryOccupancyBytes},
  };
}

nlohmann::ordered_json toJson(const sim::CacheConfig& c) {
  nlohmann::ordered_json j;
  j["capacity"] = c.capacityBytes == sim::kUnbounded ? nlohmann::ordered_json() : nlohmann::ordered_json(c.capacityBytes);
  j["capacity_unit"] = c.capacityUnit == sim::CapacityUnit::bytes ? "bytes" : "objects";
  j["policy"] = c.policyId;
  j["accessory_fraction"] = c.accessoryFraction;
  j["stats_retention_days"] = c.resolvedStatsRetention() / 86400.0;
  j["byte_metric_mode"] = c.byteMetricMode || c.policyId == "zbs-byte";
  if (c.prefetch) {
    j["prefetch"] = {{"scheme", sim::schemeName(c.prefetch->scheme)},
                     {"threshold", c.prefetch->threshold},
                     {"tick_seconds", c.prefetch->tickSeconds}};
  } else {
    j["prefetch"] = nullptr;
  }
  return j;
}

}  // namespace zipfcache::cli
