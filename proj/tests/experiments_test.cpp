#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

#include "freeway/experiments.hpp"

using namespace freeway;
using namespace freeway::experiments;

TEST_CASE("parallel_for visits every index exactly once") {
  for (unsigned workers : {0u, 1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 4, [](std::size_t i) {
                    if (i == 7) throw UsageError("boom");
                  }),
                  UsageError);
}

TEST_CASE("solve_scenario") {
  const GameConfig c;
  const ScenarioResult r = solve_scenario({4242, 0}, c);
  const oracle::CrossingSolution direct = oracle::solve_crossing(4242, {}, c);
  REQUIRE(r.solvable);
  CHECK(r.length == direct.length);
  CHECK(r.actions == actions_to_string(direct.actions));
  CHECK(r.all_up == (r.actions.find_first_not_of('1') == std::string::npos));

  const ScenarioResult mid = solve_scenario({166422, 1118}, c);
  REQUIRE(mid.solvable);
  CHECK(mid.length >= 43);
  std::vector<Action> path(1118, Action::Stay);
  for (char ch : mid.actions) path.push_back(action_from_char(ch));
  GameState s = reset(166422, c);
  int collisions = 0;
  for (Action a : path) collisions += advance(s, a, c).collided ? 1 : 0;
  CHECK(collisions == 0);
  CHECK(s.score == 1);

  CHECK_THROWS_AS(solve_scenario({0, game_length(0, c) - 43}, c), UsageError);
  CHECK_THROWS_AS(solve_scenario({0, -1}, c), UsageError);
}

TEST_CASE("sample_specs") {
  const auto a = sample_specs(300, 7);
  CHECK(a.size() == 300);
  CHECK(a == sample_specs(300, 7));
  CHECK(a != sample_specs(300, 8));
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::set<ScenarioSpec>(a.begin(), a.end()).size() == a.size());
  for (const auto& s : a) {
    CHECK(s.seed <= 999'999);
    CHECK(s.start_t >= 0);
    CHECK(s.start_t <= 2500);
  }
  CHECK_THROWS_AS(sample_specs(0, 1), UsageError);
}

TEST_CASE("generate_dataset is deterministic and independent of worker count") {
  const GameConfig c;
  const auto one = generate_dataset(24, 3, c, 1);
  CHECK(one == generate_dataset(24, 3, c, 1));
  CHECK(one == generate_dataset(24, 3, c, 4));

  // Order of solving does not matter: each result is a function of its spec.
  auto specs = sample_specs(24, 3);
  std::reverse(specs.begin(), specs.end());
  for (std::size_t i = 0; i < specs.size(); ++i) CHECK(solve_scenario(specs[i], c) == one[one.size() - 1 - i]);
}

TEST_CASE("length_histogram") {
  CHECK(length_histogram({}, 10).empty());
  ScenarioResult r;
  r.solvable = true;
  r.length = 50;
  CHECK(length_histogram({r}, 10) == std::vector<std::pair<int, std::size_t>>{{50, 1}});
  CHECK_THROWS_AS(length_histogram({r}, 0), UsageError);

  std::vector<ScenarioResult> many;
  for (int len : {43, 47, 55, 71, 71, 99}) {
    r.length = len;
    many.push_back(r);
  }
  const auto h = length_histogram(many, 10);
  CHECK(h.front().first == 40);
  CHECK(h.back().first == 90);
  CHECK(h.size() == 6);
  std::size_t total = 0;
  for (const auto& [lo, n] : h) total += n;
  CHECK(total == many.size());
  CHECK(h[3] == std::pair<int, std::size_t>{70, 2});
  CHECK(h[4] == std::pair<int, std::size_t>{80, 0});
}

TEST_CASE("always_up_baseline") {
  const GameConfig c;
  CHECK(always_up_baseline(12, c) == always_up_baseline(12, c));
  const auto scores = baseline_scores(0, 6, c, 3);
  for (std::size_t i = 0; i < scores.size(); ++i) CHECK(scores[i] == always_up_baseline(i, c));
}

TEST_CASE("play_full_game beats always-up and replays to its score") {
  const GameConfig c;
  for (std::uint64_t seed : {0ull, 50ull}) {
    const GameTrace trace = play_full_game(seed, c);
    CHECK(trace.seed == seed);
    CHECK(static_cast<int>(trace.actions.size()) == game_length(seed, c));
    CHECK(trace.y_series.size() == trace.actions.size() + 1);
    CHECK(trace.score == static_cast<int>(trace.crossings.size()));
    CHECK(replay(seed, trace.actions, c).score == trace.score);
    CHECK(trace.score > always_up_baseline(seed, c));

    // Each crossing, replayed from its own prefix, ends in a crossing step
    // without touching a car.
    for (const Crossing& x : trace.crossings) {
      GameState s = replay(seed, std::span(trace.actions).first(static_cast<std::size_t>(x.start_t)), c);
      CHECK(s.cooldown == 0);
      bool hit = false;
      StepResult last;
      for (int k = 0; k < x.length; ++k) {
        last = advance(s, trace.actions[static_cast<std::size_t>(x.start_t + k)], c);
        hit = hit || last.collided;
      }
      CHECK_FALSE(hit);
      CHECK(last.crossed);
    }
  }
}

TEST_CASE("retrace rebuilds the Y series") {
  const GameConfig c;
  std::vector<Action> acts(100, Action::Up);
  const GameTrace t = retrace(9, acts, {}, c);
  CHECK(t.y_series.size() == 101);
  CHECK(t.y_series.front() == 6);
  GameState s = reset(9, c);
  for (std::size_t i = 0; i < acts.size(); ++i) {
    advance(s, acts[i], c);
    CHECK(t.y_series[i + 1] == s.y);
  }
}
