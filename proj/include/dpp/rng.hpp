#pragma once

// SplitMix64 streams. Everything randomized in this project must be a pure
// function of a 64-bit seed and reproduce bit-identically across platforms,
// so no std::*_distribution is used anywhere (their outputs are
// implementation-defined). Parallel work items draw from hash-derived
// substreams instead of sharing one generator.

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace dpp {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent substream seed for work item (base, w0, w1, ...).
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> words) {
  std::uint64_t s = mix64(base + 0x9e3779b97f4a7c15ULL);
  for (auto w : words) s = mix64(s ^ mix64(w + 0x9e3779b97f4a7c15ULL));
  return s;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, bound). bound must be >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Fisher-Yates shuffle of the first `prefix` positions (full shuffle when
  /// prefix == v.size()); used for sampling without replacement.
  template <class T>
  void shuffle_prefix(std::vector<T>& v, std::size_t prefix) {
    for (std::size_t i = 0; i < prefix && i + 1 < v.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(v.size() - i));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace dpp
