#include "ntnsim/rng.hpp"

namespace ntnsim {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

RngSpec RngSpec::child(std::uint64_t tag) const {
  return {seed, mix64(stream_id ^ mix64(tag * kGolden + kStreamSalt))};
}

CounterRng::CounterRng(RngSpec spec) : key_(mix64(mix64(spec.seed + kGolden) ^ (spec.stream_id + kStreamSalt))) {}

CounterRng::result_type CounterRng::at(std::uint64_t counter) const {
  return mix64(key_ ^ mix64((counter + 1) * kGolden));
}

double CounterRng::uniform_at(std::uint64_t counter) const {
  return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
}

}  // namespace ntnsim
