#include "freeway/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace freeway::experiments {

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

ScenarioResult solve_scenario(const ScenarioSpec& spec, const GameConfig& config,
                              const oracle::SearchOptions& options) {
  const int limit = game_length(spec.seed, config) - oracle::heuristic(config.y_min, config);
  if (spec.start_t < 0 || spec.start_t >= limit)
    throw UsageError("start_t " + std::to_string(spec.start_t) + " leaves no room to cross (limit " +
                     std::to_string(limit) + ")");
  ScenarioResult result;
  result.spec = spec;
  GameState start = reset(spec.seed, config);
  for (int i = 0; i < spec.start_t; ++i) advance(start, Action::Stay, config);
  try {
    const oracle::CrossingSolution sol = oracle::solve_crossing_from(start, config, options);
    result.solvable = true;
    result.length = sol.length;
    result.actions = actions_to_string(sol.actions);
    result.all_up = std::all_of(sol.actions.begin(), sol.actions.end(), [](Action a) { return a == Action::Up; });
    result.nodes_expanded = sol.nodes_expanded;
  } catch (const NoPathError&) {
    result.solvable = false;
  }
  return result;
}

std::vector<ScenarioSpec> sample_specs(std::size_t n, std::uint64_t sampling_seed) {
  if (n == 0) throw UsageError("dataset size must be at least 1");
  const std::uint64_t space = (kMaxScenarioSeed + 1) * static_cast<std::uint64_t>(kMaxScenarioStart + 1);
  if (n > space) throw UsageError("dataset size exceeds the number of distinct scenarios");
  std::set<ScenarioSpec> chosen;
  detrng::StreamState st = detrng::stream_init(sampling_seed, detrng::kSampleTag);
  std::uint64_t counter = 0;
  while (chosen.size() < n) {
    st = detrng::stream_mix(st, counter++);
    const std::uint64_t seed = detrng::draw_uniform(st, kMaxScenarioSeed + 1);
    st = detrng::stream_mix(st, counter++);
    const int start_t = static_cast<int>(detrng::draw_uniform(st, kMaxScenarioStart + 1));
    chosen.insert({seed, start_t});
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<ScenarioResult> generate_dataset(std::size_t n, std::uint64_t sampling_seed, const GameConfig& config,
                                             unsigned workers, const oracle::SearchOptions& options) {
  const std::vector<ScenarioSpec> specs = sample_specs(n, sampling_seed);
  std::vector<ScenarioResult> results(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) { results[i] = solve_scenario(specs[i], config, options); });
  return results;
}

GameTrace play_full_game(std::uint64_t seed, const GameConfig& config, const oracle::SearchOptions& options) {
  const int length = game_length(seed, config);
  GameTrace trace;
  trace.seed = seed;
  GameState state = reset(seed, config);
  auto push = [&](Action a) {
    advance(state, a, config);
    trace.actions.push_back(a);
  };

  while (state.t < length) {
    const int start_t = state.t;
    oracle::CrossingSolution sol;
    try {
      sol = oracle::solve_crossing_from(state, config, options);
    } catch (const NoPathError&) {
      // No collision-free crossing fits; hold Up to the end. A crossing that
      // still happens that way is recorded like any other.
      const int pad_start = state.t;
      while (state.t < length) {
        push(Action::Up);
        if (state.crossed) trace.crossings.push_back({pad_start, state.t - pad_start});
      }
      break;
    }
    for (Action a : sol.actions) push(a);
    if (!state.crossed) throw ConsistencyError("oracle path did not end in a crossing");
    trace.crossings.push_back({start_t, sol.length});
    while (state.cooldown > 0 && state.t < length) push(Action::Up);
  }
  trace.score = state.score;
  return retrace(seed, trace.actions, trace.crossings, config);
}

int always_up_baseline(std::uint64_t seed, const GameConfig& config) {
  const int length = game_length(seed, config);
  GameState state = reset(seed, config);
  while (state.t < length) advance(state, Action::Up, config);
  return state.score;
}

std::vector<int> baseline_scores(std::uint64_t first_seed, std::size_t count, const GameConfig& config,
                                 unsigned workers) {
  std::vector<int> scores(count);
  parallel_for(count, workers, [&](std::size_t i) { scores[i] = always_up_baseline(first_seed + i, config); });
  return scores;
}

std::vector<std::pair<int, std::size_t>> length_histogram(const std::vector<ScenarioResult>& results, int bin_width) {
  if (bin_width < 1) throw UsageError("bin_width must be >= 1");
  std::vector<int> bins;
  for (const ScenarioResult& r : results)
    if (r.solvable) bins.push_back((r.length / bin_width) * bin_width);
  if (bins.empty()) return {};
  const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
  std::vector<std::pair<int, std::size_t>> hist;
  for (int b = *lo; b <= *hi; b += bin_width) hist.emplace_back(b, 0);
  for (int b : bins) ++hist[static_cast<std::size_t>((b - *lo) / bin_width)].second;
  return hist;
}

GameTrace retrace(std::uint64_t seed, const std::vector<Action>& actions, const std::vector<Crossing>& crossings,
                  const GameConfig& config) {
  GameTrace trace;
  trace.seed = seed;
  trace.actions = actions;
  trace.crossings = crossings;
  trace.y_series.reserve(actions.size() + 1);
  GameState state = reset(seed, config);
  trace.y_series.push_back(state.y);
  for (Action a : actions) {
    advance(state, a, config);
    trace.y_series.push_back(state.y);
  }
  trace.score = state.score;
  return trace;
}

}  // namespace freeway::experiments
