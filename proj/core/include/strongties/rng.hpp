#pragma once

#include <cstdint>

namespace strongties {

// SplitMix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless counter-based draw: one 64-bit value per (seed, stream, a, b)
// tuple. Streams keep independent uses of the same seed from colliding.
constexpr std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t a, std::uint64_t b = 0) noexcept {
  std::uint64_t h = mix64(seed ^ mix64(stream));
  h = mix64(h ^ a);
  return mix64(h ^ b);
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double u64_to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

constexpr double keyed_unit(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t a, std::uint64_t b = 0) noexcept {
  return u64_to_unit(keyed_u64(seed, stream, a, b));
}

// Unbiased draw in [0, n) by rejection. Used instead of
// std::uniform_int_distribution, whose output is implementation-defined.
template <class Engine>
std::uint64_t bounded(Engine& eng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = eng();
    if (r >= threshold) return r % n;
  }
}

// In-place Fisher-Yates shuffle driven by bounded(); deterministic for a
// given engine state across platforms.
template <class Engine, class T>
void shuffle_vec(Engine& eng, T& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(eng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace strongties
