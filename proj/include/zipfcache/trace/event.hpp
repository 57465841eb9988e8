#pragma once

#include <cstdint>
#include <string>

namespace zipfcache::trace {

enum class EventKind : std::uint8_t { request, modification };

struct TraceEvent {
  double timestamp = 0.0;  // seconds, nondecreasing within a stream
  std::string objectId;
  std::uint64_t sizeBytes = 1;  // modifications carry the new size
  EventKind kind = EventKind::request;
  bool cacheable = true;

  bool isRequest() const { return kind == EventKind::request; }
  bool operator==(const TraceEvent&) const = default;
};

}  // namespace zipfcache::trace
