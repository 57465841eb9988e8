#pragma once

#include <json.hpp>

#include "zipfcache/sim/config.hpp"
#include "zipfcache/sim/report.hpp"

namespace zipfcache::cli {

// snake_case field names; these are the keys of simulate's "report" object.
nlohmann::ordered_json toJson(const sim::SimReport& r);

nlohmann::ordered_json toJson(const sim::CacheConfig& c);

}  // namespace zipfcache::cli
