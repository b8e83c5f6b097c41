#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace levylab {

/// SplitMix64 finalizer. Bijective on 64-bit words; used both to expand seeds
/// and as the mixing function of the counter-based generator below.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += UINT64_C(0x9E3779B97F4A7C15);
  return mix64(state);
}

/// Combine a key with a counter into a fresh, well-mixed word.
constexpr std::uint64_t hash_combine(std::uint64_t key,
                                     std::uint64_t counter) noexcept {
  return mix64(key ^ mix64(counter + UINT64_C(0x632BE59BD9B4E019)));
}

/// Map 64 random bits to a double in the open interval (0, 1).
constexpr double to_unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Counter-based uniform: a pure function of (key, counter, purpose).
/// Used for draws that must be reproducible independently of evaluation
/// order, e.g. refinement of a stored path inside one grid interval.
constexpr double keyed_uniform(std::uint64_t key, std::uint64_t counter,
                               std::uint64_t purpose) noexcept {
  return to_unit_open(hash_combine(hash_combine(key, purpose), counter));
}

/// xoshiro256++ stream. Satisfies UniformRandomBitGenerator.
///
/// Substreams are derived from (master seed, tag, index) through SplitMix64,
/// so replicate i of an experiment sees the same numbers whatever the number
/// of workers or the order in which replicates are scheduled.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  static RandomStream derive(std::uint64_t master, std::uint64_t tag,
                             std::uint64_t index) noexcept {
    return RandomStream(hash_combine(hash_combine(master, tag), index));
  }

  /// Child stream identified by `tag`; consumes one word of this stream.
  RandomStream split(std::uint64_t tag) noexcept {
    return RandomStream(hash_combine((*this)(), tag));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform() noexcept { return to_unit_open((*this)()); }

  double exponential(double rate) noexcept { return -std::log(uniform()) / rate; }

  /// Standard normal, Marsaglia polar method with one cached value.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, q;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      q = u * u + v * v;
    } while (q >= 1.0 || q == 0.0);
    const double f = std::sqrt(-2.0 * std::log(q) / q);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace levylab
