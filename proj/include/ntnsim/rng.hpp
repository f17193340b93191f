#pragma once

#include <cstdint>
#include <limits>

namespace ntnsim {

/// Identifies one reproducible random stream. Streams form a tree: child()
/// derives an independent sub-stream from a tag, so a draw is a pure
/// function of (seed, stream path, counter) and never of scheduling order.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  RngSpec child(std::uint64_t tag) const;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based generator: output i is a keyed hash of i. Random access
/// via at()/uniform_at(); sequential access through operator() satisfies
/// UniformRandomBitGenerator, so <random> distributions can consume it.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(RngSpec spec);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }

  result_type at(std::uint64_t counter) const;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_at(std::uint64_t counter) const;
  double uniform() { return uniform_at(counter_++); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ntnsim
