#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freeway/detrng.hpp"

namespace freeway {

inline constexpr int kLaneCount = 10;
inline constexpr std::size_t kRamSize = 128;
inline constexpr std::size_t kRamChickenY = 14;
inline constexpr std::size_t kRamCooldown = 106;
inline constexpr std::size_t kRamCarX = 108;

// Exact speed in car-units per timestep.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// One support point of the chicken's step-size distribution.
struct StepWeight {
  int size = 0;
  std::uint32_t weight = 0;

  friend bool operator==(const StepWeight&, const StepWeight&) = default;
};

struct GameConfig {
  int x_range = 160;
  int y_min = 6;
  int y_cross = 175;
  int y_cap = 177;
  int lane_base = 13;
  int lane_width_step = 16;
  std::array<Rational, kLaneCount> speeds{{{3, 5}, {3, 4}, {1, 1}, {3, 2}, {3, 1},
                                           {3, 1}, {3, 2}, {1, 1}, {3, 4}, {3, 5}}};
  std::array<int, kLaneCount> directions{{1, 1, 1, 1, 1, -1, -1, -1, -1, -1}};
  int collide_x_lo = 40;
  int collide_x_hi = 53;
  int step_max = 4;
  std::vector<StepWeight> step_weights{{2, 1}, {3, 1}, {4, 2}};
  int knockback = 24;
  int cool_hit = 12;
  int cool_top = 8;
  int jitter_amplitude = 4;
  int game_len_base = 2700;
  int game_len_spread = 100;
  // Jitter off and a fixed step of kDeterministicStep: (t, y) becomes Markovian.
  bool deterministic_mode = false;

  static constexpr int kDeterministicStep = 3;

  // Throws UsageError describing the first violated constraint.
  void validate() const;

  double mean_step() const;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

enum class Action : std::uint8_t { Stay = 0, Up = 1, Down = 2 };

inline constexpr std::array<Action, 3> kExpansionOrder{Action::Up, Action::Stay, Action::Down};

Action action_from_code(int code);
Action action_from_char(char c);
inline char action_char(Action a) { return static_cast<char>('0' + static_cast<int>(a)); }
std::string actions_to_string(std::span<const Action> actions);
std::vector<Action> actions_from_string(const std::string& text);

struct GameState {
  std::uint64_t seed = 0;
  int t = 0;
  int y = 0;
  int cooldown = 0;
  int score = 0;
  detrng::StreamState chicken_stream;
  bool collided = false;
  bool crossed = false;

  friend bool operator==(const GameState&, const GameState&) = default;
};

// new_y is the chicken's Y once the step is complete (after knockback or the
// top reset). moved_y is where the move itself put the chicken, which is the
// Y the collision and crossing tests look at.
struct StepResult {
  int new_y = 0;
  int moved_y = 0;
  bool collided = false;
  bool crossed = false;
  int t_after = 0;
};

struct LaneBand {
  int lo = 0;
  int hi = 0;
};

GameState reset(std::uint64_t seed, const GameConfig& config);

int car_x(std::uint64_t seed, int lane, int t, const GameConfig& config);

LaneBand lane_band(int lane, const GameConfig& config);

bool collision_at(std::uint64_t seed, int y, int t, const GameConfig& config);

// Step-size draw for a move; reads but does not advance the stream.
int draw_step_size(detrng::StreamState stream, const GameConfig& config);

int game_length(std::uint64_t seed, const GameConfig& config);

// In-place step. Throws GameOverError once state.t reached the game length.
StepResult advance(GameState& state, Action action, const GameConfig& config);

inline std::pair<GameState, StepResult> step(GameState state, Action action,
                                             const GameConfig& config) {
  StepResult r = advance(state, action, config);
  return {state, r};
}

std::array<std::uint8_t, kRamSize> encode_ram(const GameState& state, const GameConfig& config);

GameState replay(std::uint64_t seed, std::span<const Action> actions, const GameConfig& config);

GameState replay_from(GameState state, std::span<const Action> actions, const GameConfig& config);

}  // namespace freeway
