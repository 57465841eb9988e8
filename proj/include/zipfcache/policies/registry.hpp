#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zipfcache/sim/config.hpp"
#include "zipfcache/sim/policy.hpp"

namespace zipfcache::policies {

// Ids accepted by makePolicy, in display order.
std::vector<std::string> policyIds();

/// Builds the policy named by config.policyId. Throws ConfigError listing the
/// known ids for anything else.
std::unique_ptr<sim::ReplacementPolicy> makePolicy(const sim::CacheConfig& config);

}  // namespace zipfcache::policies
