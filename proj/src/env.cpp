#include "freeway/env.hpp"

#include <algorithm>
#include <numeric>

namespace freeway {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(std::string("invalid game config: ") + what);
}

void check_lane(int lane) {
  if (lane < 0 || lane >= kLaneCount)
    throw UsageError("lane " + std::to_string(lane) + " out of range [0, 9]");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void GameConfig::validate() const {
  require(x_range > 0, "x_range must be positive");
  require(y_min < y_cross && y_cross <= y_cap, "need y_min < y_cross <= y_cap");
  require(collide_x_lo <= collide_x_hi && collide_x_lo >= 0 && collide_x_hi < x_range,
          "need 0 <= collide_x_lo <= collide_x_hi < x_range");
  require(lane_width_step > 0, "lane_width_step must be positive");
  for (const Rational& s : speeds) require(s.den > 0 && s.num >= 0, "speeds must be non-negative p/q with q > 0");
  for (int d : directions) require(d == 1 || d == -1, "directions must be +1 or -1");
  require(step_max > 0, "step_max must be positive");
  require(!step_weights.empty(), "step_weights must not be empty");
  for (const StepWeight& w : step_weights) {
    require(w.size > 0 && w.size <= step_max, "step sizes must lie in [1, step_max]");
    require(w.weight > 0, "step weights must be positive");
  }
  require(kDeterministicStep <= step_max, "deterministic step exceeds step_max");
  require(knockback >= 0 && cool_hit >= 0 && cool_top >= 0, "knockback and cooldowns must be non-negative");
  require(jitter_amplitude >= 1, "jitter_amplitude must be >= 1");
  require(game_len_base > 0 && game_len_spread >= 1, "game length base and spread must be positive");
}

double GameConfig::mean_step() const {
  double total = 0.0, weighted = 0.0;
  for (const StepWeight& w : step_weights) {
    total += w.weight;
    weighted += static_cast<double>(w.weight) * w.size;
  }
  return weighted / total;
}

Action action_from_code(int code) {
  if (code < 0 || code > 2) throw UsageError("action code " + std::to_string(code) + " not in {0,1,2}");
  return static_cast<Action>(code);
}

Action action_from_char(char c) {
  if (c < '0' || c > '2') throw UsageError(std::string("action character '") + c + "' not in {0,1,2}");
  return static_cast<Action>(c - '0');
}

std::string actions_to_string(std::span<const Action> actions) {
  std::string out;
  out.reserve(actions.size());
  for (Action a : actions) out.push_back(action_char(a));
  return out;
}

std::vector<Action> actions_from_string(const std::string& text) {
  std::vector<Action> out;
  out.reserve(text.size());
  for (char c : text) out.push_back(action_from_char(c));
  return out;
}

GameState reset(std::uint64_t seed, const GameConfig& config) {
  GameState s;
  s.seed = seed;
  s.y = config.y_min;
  s.chicken_stream = detrng::stream_init(seed, detrng::kChickenTag);
  return s;
}

int car_x(std::uint64_t seed, int lane, int t, const GameConfig& config) {
  check_lane(lane);
  std::int64_t jitter = 0;
  if (t != 0 && !config.deterministic_mode) {
    detrng::StreamState st{detrng::hash64({seed, detrng::kCarTag, static_cast<std::uint64_t>(lane),
                                           static_cast<std::uint64_t>(t)})};
    jitter = static_cast<std::int64_t>(detrng::draw_uniform(st, static_cast<std::uint64_t>(config.jitter_amplitude)));
  }
  const Rational& v = config.speeds[static_cast<std::size_t>(lane)];
  const std::int64_t base = floor_div(v.num * t, v.den) + jitter;
  const std::int64_t range = config.x_range;
  const std::int64_t wrapped = ((base % range) + range) % range;
  if (config.directions[static_cast<std::size_t>(lane)] > 0) return static_cast<int>(wrapped);
  return static_cast<int>((range - wrapped) % range);
}

LaneBand lane_band(int lane, const GameConfig& config) {
  check_lane(lane);
  return {config.lane_width_step * lane + config.lane_base,
          config.lane_width_step * (lane + 1) + config.lane_base};
}

bool collision_at(std::uint64_t seed, int y, int t, const GameConfig& config) {
  for (int lane = 0; lane < kLaneCount; ++lane) {
    const LaneBand band = lane_band(lane, config);
    if (y < band.lo || y > band.hi) continue;
    const int x = car_x(seed, lane, t, config);
    if (x >= config.collide_x_lo && x <= config.collide_x_hi) return true;
  }
  return false;
}

int draw_step_size(detrng::StreamState stream, const GameConfig& config) {
  if (config.deterministic_mode) return GameConfig::kDeterministicStep;
  std::uint64_t total = 0;
  for (const StepWeight& w : config.step_weights) total += w.weight;
  std::uint64_t r = detrng::draw_uniform(stream, total);
  for (const StepWeight& w : config.step_weights) {
    if (r < w.weight) return w.size;
    r -= w.weight;
  }
  return config.step_weights.back().size;  // unreachable for a validated config
}

int game_length(std::uint64_t seed, const GameConfig& config) {
  const std::uint64_t h = detrng::hash64({seed, detrng::kLengthTag});
  return config.game_len_base + static_cast<int>(h % static_cast<std::uint64_t>(config.game_len_spread));
}

StepResult advance(GameState& state, Action action, const GameConfig& config) {
  const int length = game_length(state.seed, config);
  if (state.t >= length)
    throw GameOverError("game over: timestep " + std::to_string(state.t) + " reached game length " +
                        std::to_string(length));

  // The stream absorbs every action, cooldown or not, so the chicken's
  // future moves depend on the whole action history.
  state.chicken_stream = detrng::stream_mix(state.chicken_stream, static_cast<std::uint64_t>(action));
  state.collided = false;
  state.crossed = false;

  if (state.cooldown > 0) {
    --state.cooldown;
  } else if (action != Action::Stay) {
    const int d = draw_step_size(state.chicken_stream, config);
    const int target = action == Action::Up ? state.y + d : state.y - d;
    state.y = std::clamp(target, config.y_min, config.y_cap);
  }

  ++state.t;
  StepResult r;
  r.moved_y = state.y;
  if (collision_at(state.seed, state.y, state.t, config)) {
    state.y = std::max(config.y_min, state.y - config.knockback);
    state.cooldown = config.cool_hit;
    state.collided = true;
  } else if (state.y >= config.y_cross) {
    ++state.score;
    state.y = config.y_min;
    state.cooldown = config.cool_top;
    state.crossed = true;
  }
  r.new_y = state.y;
  r.collided = state.collided;
  r.crossed = state.crossed;
  r.t_after = state.t;
  return r;
}

std::array<std::uint8_t, kRamSize> encode_ram(const GameState& state, const GameConfig& config) {
  std::array<std::uint8_t, kRamSize> ram{};
  ram[kRamChickenY] = static_cast<std::uint8_t>(state.y);
  ram[kRamCooldown] = static_cast<std::uint8_t>(std::min(state.cooldown, 255));
  for (int lane = 0; lane < kLaneCount; ++lane)
    ram[kRamCarX + static_cast<std::size_t>(lane)] = static_cast<std::uint8_t>(car_x(state.seed, lane, state.t, config));
  return ram;
}

GameState replay(std::uint64_t seed, std::span<const Action> actions, const GameConfig& config) {
  return replay_from(reset(seed, config), actions, config);
}

GameState replay_from(GameState state, std::span<const Action> actions, const GameConfig& config) {
  for (Action a : actions) advance(state, a, config);
  return state;
}

}  // namespace freeway
