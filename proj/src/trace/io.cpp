#include "zipfcache/trace/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "zipfcache/errors.hpp"

namespace zipfcache::trace {

namespace {

std::string_view trimCr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

template <typename T>
bool parseNumber(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Splits on `sep` into at most out.size() fields; returns the field count
// (out.size() + 1 signals "too many").
std::size_t split(std::string_view line, char sep, std::span<std::string_view> out) {
  std::size_t count = 0;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    const std::string_view field = line.substr(start, pos == std::string_view::npos ? line.npos : pos - start);
    if (count == out.size()) return out.size() + 1;
    out[count++] = field;
    if (pos == std::string_view::npos) return count;
    start = pos + 1;
  }
}

}  // namespace

void writeTrace(std::ostream& out, std::span<const TraceEvent> events) {
  out << kTraceHeader << '\n';
  char buf[64];
  for (const auto& e : events) {
    if (e.objectId.empty() || e.objectId.find_first_of(",\n\r") != std::string::npos)
      throw TraceFormatError("object id '" + e.objectId + "' is empty or contains a comma or newline", 0);
    const auto res = std::to_chars(buf, buf + sizeof buf, e.timestamp);
    out.write(buf, res.ptr - buf);
    out << ',' << (e.isRequest() ? 'R' : 'M') << ',' << e.objectId << ',' << e.sizeBytes << ','
        << (e.cacheable ? '1' : '0') << '\n';
  }
}

void writeTraceFile(std::span<const TraceEvent> events, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writeTrace(out, events);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<TraceEvent> parseTrace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string raw;
  std::size_t lineNo = 0;
  bool sawHeader = false;
  double lastTime = -INFINITY;
  std::string_view fields[5];
  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string_view line = trimCr(raw);
    if (!sawHeader) {
      if (line != kTraceHeader) throw TraceFormatError("missing header " + std::string(kTraceHeader), lineNo);
      sawHeader = true;
      continue;
    }
    if (line.empty()) continue;
    if (split(line, ',', fields) != 5) throw TraceFormatError("expected 5 comma-separated fields", lineNo);

    TraceEvent e;
    if (!parseNumber(fields[0], e.timestamp) || !std::isfinite(e.timestamp))
      throw TraceFormatError("bad timestamp '" + std::string(fields[0]) + "'", lineNo);
    if (fields[1] == "R")
      e.kind = EventKind::request;
    else if (fields[1] == "M")
      e.kind = EventKind::modification;
    else
      throw TraceFormatError("kind must be R or M", lineNo);
    if (fields[2].empty()) throw TraceFormatError("empty object id", lineNo);
    e.objectId = std::string(fields[2]);
    if (!fields[3].empty() && fields[3].front() == '-')
      throw TraceFormatError("size must be positive, got " + std::string(fields[3]), lineNo);
    if (!parseNumber(fields[3], e.sizeBytes) || e.sizeBytes == 0)
      throw TraceFormatError("size must be a positive integer, got '" + std::string(fields[3]) + "'", lineNo);
    if (fields[4] == "1")
      e.cacheable = true;
    else if (fields[4] == "0")
      e.cacheable = false;
    else
      throw TraceFormatError("cacheable must be 0 or 1", lineNo);
    if (e.timestamp < lastTime) throw TraceFormatError("timestamp goes backwards", lineNo);
    lastTime = e.timestamp;
    events.push_back(std::move(e));
  }
  if (in.bad()) throw IoError("read failed");
  return events;
}

std::vector<TraceEvent> parseTraceFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parseTrace(in);
}

ProxyLogResult parseProxyLog(std::istream& in) {
  ProxyLogResult result;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = trimCr(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::string_view f[7];
    std::size_t count = 0;
    std::size_t pos = 0;
    while (count < 7) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string_view::npos) break;
      const std::size_t end = line.find_first_of(" \t", pos);
      f[count++] = line.substr(pos, end == std::string_view::npos ? line.npos : end - pos);
      pos = end;
      if (pos == std::string_view::npos) break;
    }
    double ts = 0.0;
    double elapsed = 0.0;
    std::int64_t bytes = 0;
    int status = 0;
    const std::size_t slash = count == 7 ? f[3].find('/') : std::string_view::npos;
    if (count < 7 || !parseNumber(f[0], ts) || !std::isfinite(ts) || !parseNumber(f[1], elapsed) ||
        slash == std::string_view::npos || !parseNumber(f[3].substr(slash + 1), status) ||
        !parseNumber(f[4], bytes) || bytes < 0) {
      ++result.skipped;
      continue;
    }
    if (f[5] != "GET" || status < 200 || status >= 400) {
      ++result.filtered;
      continue;
    }
    TraceEvent e;
    e.timestamp = ts;
    e.objectId = std::string(f[6]);
    e.sizeBytes = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(bytes));
    e.kind = EventKind::request;
    e.cacheable = status == 200 || status == 203 || status == 206 || status == 300 || status == 301 || status == 410;
    result.events.push_back(std::move(e));
  }
  if (in.bad()) throw IoError("read failed");
  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) { return a.timestamp < b.timestamp; });
  return result;
}

ProxyLogResult parseProxyLogFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parseProxyLog(in);
}

}  // namespace zipfcache::trace
