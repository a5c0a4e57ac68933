#ifndef BAGEL_NUMERICS_RNG_HPP
#define BAGEL_NUMERICS_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace bagel::numerics {

/// SplitMix64 finalizer. Used for seeding and for deriving child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes a value into a running 64-bit hash (order sensitive).
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

/// xoshiro256** (Blackman & Vigna) seeded through SplitMix64.
///
/// All derived draws (uniforms, Gaussians, bounded integers, shuffles) are
/// implemented here rather than through <random> distributions so that a seed
/// yields the same stream with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform in (0, 1].
  double uniform_open_closed();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bagel::numerics

#endif  // BAGEL_NUMERICS_RNG_HPP
