#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "freeway/env.hpp"
#include "freeway/oracle.hpp"

namespace freeway::experiments {

inline constexpr std::uint64_t kMaxScenarioSeed = 999'999;
inline constexpr int kMaxScenarioStart = 2'500;

struct ScenarioSpec {
  std::uint64_t seed = 0;
  int start_t = 0;

  friend auto operator<=>(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct ScenarioResult {
  ScenarioSpec spec;
  bool solvable = false;
  int length = 0;
  std::string actions;
  bool all_up = false;
  std::uint64_t nodes_expanded = 0;

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

struct Crossing {
  int start_t = 0;
  int length = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct GameTrace {
  std::uint64_t seed = 0;
  std::vector<Action> actions;
  int score = 0;
  std::vector<Crossing> crossings;
  // y_series[k] is the chicken's Y after k actions.
  std::vector<int> y_series;

  friend bool operator==(const GameTrace&, const GameTrace&) = default;
};

// Runs fn(0..count-1) on `workers` threads (0 or 1 runs inline). Each index is
// visited once; callers write results into per-index slots.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

// start_t Stay actions, then one oracle crossing.
ScenarioResult solve_scenario(const ScenarioSpec& spec, const GameConfig& config,
                              const oracle::SearchOptions& options = {});

// n distinct specs from the sampling stream, sorted.
std::vector<ScenarioSpec> sample_specs(std::size_t n, std::uint64_t sampling_seed);

// Solves sample_specs(n, sampling_seed). Output order and content do not
// depend on `workers`.
std::vector<ScenarioResult> generate_dataset(std::size_t n, std::uint64_t sampling_seed, const GameConfig& config,
                                             unsigned workers = 1, const oracle::SearchOptions& options = {});

GameTrace play_full_game(std::uint64_t seed, const GameConfig& config, const oracle::SearchOptions& options = {});

// Action 1 for the whole game.
int always_up_baseline(std::uint64_t seed, const GameConfig& config);

std::vector<int> baseline_scores(std::uint64_t first_seed, std::size_t count, const GameConfig& config,
                                 unsigned workers = 1);

// Consecutive bins from the lowest to the highest occupied one, keyed by
// their lower edge. Unsolvable results carry no length and are not counted.
std::vector<std::pair<int, std::size_t>> length_histogram(const std::vector<ScenarioResult>& results, int bin_width);

// Replays a trace's actions and rebuilds the Y series and score.
GameTrace retrace(std::uint64_t seed, const std::vector<Action>& actions, const std::vector<Crossing>& crossings,
                  const GameConfig& config);

}  // namespace freeway::experiments
