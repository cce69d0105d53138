#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace medlab {

/// Seedable 64-bit generator shared by every randomized component. Only raw
/// 64-bit outputs of std::mt19937_64 are consumed (no std distributions), so
/// streams are identical across standard libraries.
class Prng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace medlab
