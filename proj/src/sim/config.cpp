#include "zipfcache/sim/config.hpp"

#include <algorithm>
#include <cmath>

#include "zipfcache/errors.hpp"

namespace zipfcache::sim {

const char* schemeName(PrefetchScheme scheme) {
  switch (scheme) {
    case PrefetchScheme::goodfetch:
      return "goodfetch";
    case PrefetchScheme::api:
      return "api";
    case PrefetchScheme::lifetime:
      return "lifetime";
  }
  return "unknown";
}

PrefetchScheme parseScheme(const std::string& id) {
  if (id == "goodfetch") return PrefetchScheme::goodfetch;
  if (id == "api") return PrefetchScheme::api;
  if (id == "lifetime") return PrefetchScheme::lifetime;
  throw ConfigError("unknown prefetch scheme '" + id + "' (expected goodfetch, api, lifetime)");
}

void CacheConfig::validate() const {
  if (capacityBytes == 0) throw ConfigError("capacity must be positive");
  if (!(accessoryFraction > 0.0 && accessoryFraction <= 0.10))
    throw ConfigError("accessory fraction must lie in (0, 0.10]");
  if (statsRetentionSeconds && !(*statsRetentionSeconds > 0.0))
    throw ConfigError("stats retention must be positive");
  if (externalBandwidth && !(*externalBandwidth > 0.0)) throw ConfigError("external bandwidth must be positive");
  if (prefetch) {
    if (std::isnan(prefetch->threshold)) throw ConfigError("prefetch threshold must be a number");
    if (!(prefetch->tickSeconds >= 0.0)) throw ConfigError("prefetch tick must be nonnegative");
  }
}

double CacheConfig::resolvedStatsRetention() const {
  if (statsRetentionSeconds) return *statsRetentionSeconds;
  return defaultStatsRetention(static_cast<double>(capacityBytes), externalBandwidth);
}

double defaultStatsRetention(double capacityBytes, std::optional<double> externalBandwidth) {
  double ts = kMinStatsRetention;
  if (externalBandwidth && *externalBandwidth > 0.0) ts = std::max(ts, 10.0 * capacityBytes / *externalBandwidth);
  return std::min(ts, kMaxStatsRetention);
}

}  // namespace zipfcache::sim
