#include <doctest.h>

#include <array>
#include <unordered_set>

#include "freeway/detrng.hpp"

using namespace freeway::detrng;

// Golden values evaluated with an independent big-integer script of the
// same accumulate-and-finalize definition.
TEST_CASE("hash64 golden values") {
  CHECK(hash64({0}) == 0xE220A8397B1DCDAFull);
  CHECK(hash64({42}) == 0xBDD732262FEB6E95ull);
  CHECK(hash64({0, 1}) == 0x9E0160293A33AAF7ull);
  CHECK(hash64({1, 0}) == 0x445018E305810B78ull);
  static_assert(hash64({0}) == 0xE220A8397B1DCDAFull);
}

TEST_CASE("hash64 is pure and order sensitive") {
  CHECK(hash64({123456789}) == hash64({123456789}));
  CHECK(hash64({0, 1}) != hash64({1, 0}));
}

TEST_CASE("hash64 rejects empty and oversized input") {
  std::array<std::uint64_t, 9> nine{};
  CHECK_THROWS_AS(hash64(std::span<const std::uint64_t>{}), freeway::UsageError);
  CHECK_THROWS_AS(hash64(std::span<const std::uint64_t>(nine)), freeway::UsageError);
  CHECK_NOTHROW(hash64(std::span<const std::uint64_t>(nine.data(), 8)));
}

TEST_CASE("stream_init") {
  CHECK(stream_init(0, kChickenTag) == stream_init(0, kChickenTag));
  CHECK(stream_init(0, kChickenTag).state == 0x97892959F1050A68ull);
  CHECK(stream_init(1, kChickenTag).state == 0x939305B1D0586B3Full);
  CHECK(stream_init(0, kCarTag) != stream_init(1, kCarTag));
  for (std::uint64_t s = 0; s < 100; ++s) CHECK(stream_init(s, kCarTag) != stream_init(s, kChickenTag));
}

TEST_CASE("stream_mix") {
  const StreamState s = stream_init(0, kChickenTag);
  CHECK(stream_mix(s, 7) == stream_mix(s, 7));
  CHECK(stream_mix(stream_mix(s, 1), 2).state == 0x854754876AB4B56Aull);
  CHECK(stream_mix(stream_mix(s, 2), 1).state == 0x53602BD2FF0525AAull);
  CHECK(s == stream_init(0, kChickenTag));  // mixing returns a new value
}

TEST_CASE("a million successive mixes never repeat a state") {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1'100'000);
  StreamState s = stream_init(2024, kChickenTag);
  bool repeated = false;
  for (std::uint64_t i = 0; i < 1'000'000; ++i) {
    s = stream_mix(s, i % 3);
    repeated = repeated || !seen.insert(s.state).second;
  }
  CHECK_FALSE(repeated);
}

TEST_CASE("draw_uniform") {
  const StreamState s = stream_init(5, kCarTag);
  CHECK(draw_uniform(s, 1) == 0);
  CHECK(draw_uniform(s, 97) == draw_uniform(s, 97));
  CHECK(draw_uniform(s, 97) == s.state % 97);
  CHECK_THROWS_AS(draw_uniform(s, 0), freeway::UsageError);

  std::array<int, 4> counts{};
  StreamState st = stream_init(9, kChickenTag);
  for (int i = 0; i < 100'000; ++i) {
    st = stream_mix(st, 1);
    ++counts[draw_uniform(st, 4)];
  }
  for (int c : counts) CHECK(std::abs(c / 100'000.0 - 0.25) < 0.01);
}
