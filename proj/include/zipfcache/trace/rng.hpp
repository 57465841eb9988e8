#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace zipfcache::trace {

// Seedable source whose every draw is defined here, so a stream reproduces
// across standard libraries. std::mt19937_64 fixes the bit sequence; the
// std:: distributions do not, hence the hand-written transforms:
//   uniform      (x >> 11) * 2^-53                      in [0, 1)
//   exponential  -log(1 - u) / rate
//   normal       sqrt(-2 log(1 - u1)) * cos(2 pi u2)   one value per two draws
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t nextBits() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586 * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zipfcache::trace
