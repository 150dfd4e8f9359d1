#pragma once

#include <cstdint>
#include <limits>

namespace ringside {

namespace detail {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based random stream. The state is a pure function of
/// (seed, condition, trial) plus a draw counter, so a trial's draws never
/// depend on which worker runs it or in what order.
///
/// Satisfies UniformRandomBitGenerator. Uniform variates are built from raw
/// bits rather than std:: distributions so results are identical across
/// standard library implementations.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) : Stream(seed, 0, 0) {}

  Stream(std::uint64_t seed, std::uint64_t condition, std::uint64_t trial)
      : state_(derive_key(seed, condition, trial)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Unbiased integer in [0, n) (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) {
    auto x = (*this)();
    auto m = static_cast<unsigned __int128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<unsigned __int128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t condition,
                                            std::uint64_t trial) {
    std::uint64_t k = detail::mix64(seed + detail::kGolden);
    k = detail::mix64(k ^ (condition * 0xD1B54A32D192ED03ULL + 1));
    k = detail::mix64(k ^ (trial * 0xAEF17502108EF2D9ULL + 2));
    return k;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ringside
