#include "zipfcache/policies/registry.hpp"

#include "zipfcache/errors.hpp"
#include "zipfcache/policies/baselines.hpp"
#include "zipfcache/policies/zbs.hpp"

namespace zipfcache::policies {

std::vector<std::string> policyIds() { return {"zbs", "zbs-byte", "lru", "lfu", "fifo"}; }

std::unique_ptr<sim::ReplacementPolicy> makePolicy(const sim::CacheConfig& config) {
  const std::string& id = config.policyId;
  if (id == "zbs" || id == "zbs-byte") return std::make_unique<ZbsPolicy>(config);
  if (id == "lru") return std::make_unique<LruPolicy>();
  if (id == "lfu") return std::make_unique<LfuPolicy>();
  if (id == "fifo") return std::make_unique<FifoPolicy>();
  std::string known;
  for (const auto& p : policyIds()) known += (known.empty() ? "" : ", ") + p;
  throw ConfigError("unknown policy '" + id + "' (expected one of " + known + ")");
}

}  // namespace zipfcache::policies
