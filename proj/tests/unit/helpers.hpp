#pragma once

#include <string>
#include <vector>

#include "zipfcache/trace/event.hpp"

namespace testing {

inline zipfcache::trace::TraceEvent req(double t, std::string id, std::uint64_t size = 1, bool cacheable = true) {
  return {t, std::move(id), size, zipfcache::trace::EventKind::request, cacheable};
}

inline zipfcache::trace::TraceEvent mod(double t, std::string id, std::uint64_t size = 1) {
  return {t, std::move(id), size, zipfcache::trace::EventKind::modification, true};
}

// Requests at t = 0, 1, 2, ... for the given ids, all size 1.
inline std::vector<zipfcache::trace::TraceEvent> requests(const std::vector<std::string>& ids) {
  std::vector<zipfcache::trace::TraceEvent> out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.push_back(req(static_cast<double>(i), ids[i]));
  return out;
}

// Composite Simpson rule on [a, b] with an even number of panels.
template <class F>
double simpson(F f, double a, double b, std::size_t panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) sum += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace testing
