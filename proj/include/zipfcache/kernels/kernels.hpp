#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// The scalar namespace is the definition of each kernel's result. SIMD
// variants of argmaxAgeRatio must return the same index bit-for-bit;
// linearFitSums may differ by summation order only.

#include <cstddef>
#include <optional>
#include <span>

namespace zipfcache::kernels {

enum class Isa { scalar, avx2, neon };

const char* isaName(Isa isa);

// Best instruction set supported by both the build and the running CPU.
Isa detectIsa();

// The variant the dispatching entry points use. Honors forceIsa() and the
// ZIPFCACHE_ISA environment variable (scalar|avx2|neon), in that order.
Isa activeIsa();

// Pins dispatch to `isa` (nullopt restores detection). Throws ConfigError if
// the variant is unavailable in this build or on this CPU.
void forceIsa(std::optional<Isa> isa);

bool isaAvailable(Isa isa);

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

// Index maximizing (now - stamp[i]) * invWeight[i]. Ties go to the smaller
// order[i], then the smaller index. Returns kNoIndex for empty input.
std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now);

struct LinearSums {
  double n = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;

  // Least-squares slope of y on x; NaN when x is degenerate.
  double slope() const;
  double intercept() const;
};

LinearSums linearFitSums(std::span<const double> x, std::span<const double> y);

namespace scalar {
std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now);
LinearSums linearFitSums(std::span<const double> x, std::span<const double> y);
}  // namespace scalar

namespace avx2 {
std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now);
LinearSums linearFitSums(std::span<const double> x, std::span<const double> y);
}  // namespace avx2

namespace neon {
std::size_t argmaxAgeRatio(std::span<const double> stamp, std::span<const double> invWeight,
                           std::span<const double> order, double now);
LinearSums linearFitSums(std::span<const double> x, std::span<const double> y);
}  // namespace neon

}  // namespace zipfcache::kernels
