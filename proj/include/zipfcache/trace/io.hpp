#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "zipfcache/trace/event.hpp"

namespace zipfcache::trace {

inline constexpr std::string_view kTraceHeader = "#zipfcache-trace-v1";

// Native format, one event per line after the header:
//   timestamp_s,kind(R|M),object_id,size_bytes,cacheable(0|1)
// Timestamps are written in shortest round-trip form, so parse(write(x)) == x.
void writeTrace(std::ostream& out, std::span<const TraceEvent> events);
void writeTraceFile(std::span<const TraceEvent> events, const std::filesystem::path& path);

// Throws TraceFormatError naming the offending line. A zero-byte input is an
// empty stream; anything else must start with the header.
std::vector<TraceEvent> parseTrace(std::istream& in);
std::vector<TraceEvent> parseTraceFile(const std::filesystem::path& path);

struct ProxyLogResult {
  std::vector<TraceEvent> events;
  std::size_t skipped = 0;   // unparseable lines
  std::size_t filtered = 0;  // well-formed but not a GET with 2xx/3xx status
};

// Squid-style access log: time elapsed client code/status bytes method URL ...
// GET with a 2xx/3xx status becomes a request for the URL; it is cacheable
// when the status is one of 200, 203, 206, 300, 301, 410. Output is stably
// sorted by timestamp.
ProxyLogResult parseProxyLog(std::istream& in);
ProxyLogResult parseProxyLogFile(const std::filesystem::path& path);

}  // namespace zipfcache::trace
