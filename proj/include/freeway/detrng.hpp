#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

#include "freeway/errors.hpp"

// Counter-free deterministic hashing. Every random quantity in the game is a
// pure function of the words fed through hash64, so runs are reproducible
// across platforms and languages.
namespace freeway::detrng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Domain-separation tags for the independent streams.
inline constexpr std::uint64_t kCarTag = 0x4341522D58504F53ull;      // "CAR-XPOS"
inline constexpr std::uint64_t kChickenTag = 0x434849434B454E21ull;  // "CHICKEN!"
inline constexpr std::uint64_t kLengthTag = 0x47414D454C454E47ull;   // "GAMELENG"
inline constexpr std::uint64_t kSampleTag = 0x5343454E4152494Full;   // "SCENARIO"

constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::size_t kMaxHashInputs = 8;

constexpr std::uint64_t hash64(std::span<const std::uint64_t> words) {
  if (words.empty() || words.size() > kMaxHashInputs)
    throw UsageError("hash64 takes between 1 and 8 words");
  std::uint64_t acc = kGolden;
  for (std::uint64_t w : words) acc = finalize(acc ^ w);
  return acc;
}

constexpr std::uint64_t hash64(std::initializer_list<std::uint64_t> words) {
  return hash64(std::span<const std::uint64_t>(words.begin(), words.size()));
}

struct StreamState {
  std::uint64_t state = 0;

  friend constexpr bool operator==(StreamState, StreamState) = default;
};

constexpr StreamState stream_init(std::uint64_t seed, std::uint64_t tag) {
  return StreamState{hash64({seed, tag})};
}

constexpr StreamState stream_mix(StreamState st, std::uint64_t w) {
  return StreamState{hash64({st.state, w})};
}

// Reads the stream without advancing it; only stream_mix advances.
constexpr std::uint64_t draw_uniform(StreamState st, std::uint64_t n) {
  if (n == 0) throw UsageError("draw_uniform requires n >= 1");
  return st.state % n;
}

}  // namespace freeway::detrng
