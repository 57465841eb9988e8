#include <atomic>
#include <cstdlib>
#include <optional>
#include <string_view>

#include "zipfcache/errors.hpp"
#include "zipfcache/kernels/kernels.hpp"

namespace zipfcache::kernels {

namespace {

bool cpuHasAvx2() {
#if defined(ZIPFCACHE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::optional<Isa> parseIsa(std::string_view s) {
  if (s == "scalar") return Isa::scalar;
  if (s == "avx2") return Isa::avx2;
  if (s == "neon") return Isa::neon;
  return std::nullopt;
}

// -1 means "not forced".
std::atomic<int> forced{-1};

Isa resolve() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const Isa fromEnv = [] {
    if (const char* env = std::getenv("ZIPFCACHE_ISA")) {
      if (auto isa = parseIsa(env); isa && isaAvailable(*isa)) return *isa;
    }
    return detectIsa();
  }();
  return fromEnv;
}

}  // namespace

const char* isaName(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isaAvailable(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpuHasAvx2();
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detectIsa() {
  if (isaAvailable(Isa::avx2)) return Isa::avx2;
  if (isaAvailable(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa activeIsa() { return resolve(); }

void forceIsa(std::optional<Isa> isa) {
  if (isa && !isaAvailable(*isa))
    throw ConfigError(std::string("instruction set not available: ") + isaName(*isa));
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now) {
  switch (resolve()) {
    case Isa::avx2:
      return avx2::argmaxAgeRatio(stamp, invWeight, order, now);
    case Isa::neon:
      return neon::argmaxAgeRatio(stamp, invWeight, order, now);
    case Isa::scalar:
      break;
  }
  return scalar::argmaxAgeRatio(stamp, invWeight, order, now);
}

LinearSums linearFitSums(std::span<const double> x, std::span<const double> y) {
  switch (resolve()) {
    case Isa::avx2:
      return avx2::linearFitSums(x, y);
    case Isa::neon:
      return neon::linearFitSums(x, y);
    case Isa::scalar:
      break;
  }
  return scalar::linearFitSums(x, y);
}

}  // namespace zipfcache::kernels
