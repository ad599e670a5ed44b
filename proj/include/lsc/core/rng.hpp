#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace lsc {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for an independent stream named `stream` under the master `seed`.
// Parameter initialisation and every simulation stage draw from their own
// derived stream, so adding or removing a consumer never shifts another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) noexcept;

// Deterministic random source. Only the raw 64-bit engine output is used;
// all distributions below are implemented here so results do not depend on
// the standard library's distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}
  Rng(std::uint64_t seed, std::string_view stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lsc
