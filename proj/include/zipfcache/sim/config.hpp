#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace zipfcache::sim {

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

enum class CapacityUnit { bytes, objects };

enum class PrefetchScheme { goodfetch, api, lifetime };

const char* schemeName(PrefetchScheme scheme);
// Throws ConfigError listing the valid ids.
PrefetchScheme parseScheme(const std::string& id);

struct PrefetchConfig {
  PrefetchScheme scheme = PrefetchScheme::api;
  // goodfetch/api: objects whose score strictly exceeds this are kept fresh.
  double threshold = 0.0;
  // Interval of the lifetime scheme's periodic re-evaluation.
  double tickSeconds = 86400.0;
};

struct CacheConfig {
  // S_eff. In object mode this counts documents instead of bytes.
  std::uint64_t capacityBytes = kUnbounded;
  std::string policyId = "lru";
  // ZBS accessory share of capacity, in (0, 0.10].
  double accessoryFraction = 0.10;
  // ZBS statistics horizon t_s; defaultStatsRetention() when absent.
  std::optional<double> statsRetentionSeconds;
  bool byteMetricMode = false;
  CapacityUnit capacityUnit = CapacityUnit::bytes;
  std::optional<PrefetchConfig> prefetch;
  // nu_int in bytes/second, used only to derive the default t_s.
  std::optional<double> externalBandwidth;

  void validate() const;
  double resolvedStatsRetention() const;
};

inline constexpr double kMinStatsRetention = 30.0 * 86400.0;
inline constexpr double kMaxStatsRetention = 183.0 * 86400.0;

/// max(30 days, 10 S_eff / nu_int), capped at 183 days. Without a bandwidth
/// figure the lower bound applies.
double defaultStatsRetention(double capacityBytes, std::optional<double> externalBandwidth);

}  // namespace zipfcache::sim
