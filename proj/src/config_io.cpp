#include "freeway/config_io.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace freeway {

namespace {

using Json = nlohmann::ordered_json;

std::int64_t parse_i64(const std::string& s, const std::string& whole) {
  std::int64_t v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad rational '" + whole + "'");
  return v;
}

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::string rational_text(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

template <typename T>
void read_int(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("config field '") + key + "' must be an integer");
  out = v.get<T>();
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos)
    return reduced(parse_i64(text.substr(0, slash), text), parse_i64(text.substr(slash + 1), text));
  const auto dot = text.find('.');
  if (dot == std::string::npos) return {parse_i64(text, text), 1};
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 12) throw ParseError("bad rational '" + text + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::string whole = text.substr(0, dot);
  const std::int64_t ip = whole.empty() ? 0 : parse_i64(whole, text);
  const std::int64_t fp = parse_i64(frac, text);
  if (fp < 0 || ip < 0) throw ParseError("speeds must be non-negative: '" + text + "'");
  return reduced(ip * den + fp, den);
}

std::string config_to_json(const RunConfig& config) {
  const GameConfig& g = config.game;
  Json j;
  j["x_range"] = g.x_range;
  j["y_min"] = g.y_min;
  j["y_cross"] = g.y_cross;
  j["y_cap"] = g.y_cap;
  j["lane_base"] = g.lane_base;
  j["lane_width_step"] = g.lane_width_step;
  Json speeds = Json::array();
  for (const Rational& s : g.speeds) speeds.push_back(rational_text(s));
  j["speeds"] = speeds;
  j["directions"] = g.directions;
  j["collide_x_lo"] = g.collide_x_lo;
  j["collide_x_hi"] = g.collide_x_hi;
  j["step_max"] = g.step_max;
  Json weights = Json::array();
  for (const StepWeight& w : g.step_weights) weights.push_back(Json::array({w.size, w.weight}));
  j["step_weights"] = weights;
  j["knockback"] = g.knockback;
  j["cool_hit"] = g.cool_hit;
  j["cool_top"] = g.cool_top;
  j["jitter_amplitude"] = g.jitter_amplitude;
  j["game_len_base"] = g.game_len_base;
  j["game_len_spread"] = g.game_len_spread;
  j["deterministic_mode"] = g.deterministic_mode;
  j["rollout"] = config.search.rollout;
  return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text, const RunConfig& base) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  static const char* known[] = {"x_range",  "y_min",        "y_cross",      "y_cap",         "lane_base",
                                "lane_width_step", "speeds", "directions",   "collide_x_lo",  "collide_x_hi",
                                "step_max", "step_weights", "knockback",    "cool_hit",      "cool_top",
                                "jitter_amplitude", "game_len_base", "game_len_spread", "deterministic_mode",
                                "rollout"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw ParseError("unknown config field '" + item.key() + "'");
  }

  RunConfig out = base;
  GameConfig& g = out.game;
  try {
    read_int(j, "x_range", g.x_range);
    read_int(j, "y_min", g.y_min);
    read_int(j, "y_cross", g.y_cross);
    read_int(j, "y_cap", g.y_cap);
    read_int(j, "lane_base", g.lane_base);
    read_int(j, "lane_width_step", g.lane_width_step);
    read_int(j, "collide_x_lo", g.collide_x_lo);
    read_int(j, "collide_x_hi", g.collide_x_hi);
    read_int(j, "step_max", g.step_max);
    read_int(j, "knockback", g.knockback);
    read_int(j, "cool_hit", g.cool_hit);
    read_int(j, "cool_top", g.cool_top);
    read_int(j, "jitter_amplitude", g.jitter_amplitude);
    read_int(j, "game_len_base", g.game_len_base);
    read_int(j, "game_len_spread", g.game_len_spread);
    if (j.contains("speeds")) {
      const Json& s = j["speeds"];
      if (!s.is_array() || s.size() != kLaneCount) throw ParseError("speeds must list 10 values");
      for (std::size_t i = 0; i < kLaneCount; ++i)
        g.speeds[i] = parse_rational(s[i].is_string() ? s[i].get<std::string>() : s[i].dump());
    }
    if (j.contains("directions")) {
      const Json& d = j["directions"];
      if (!d.is_array() || d.size() != kLaneCount) throw ParseError("directions must list 10 values");
      for (std::size_t i = 0; i < kLaneCount; ++i) g.directions[i] = d[i].get<int>();
    }
    if (j.contains("step_weights")) {
      const Json& w = j["step_weights"];
      if (!w.is_array()) throw ParseError("step_weights must be an array of [size, weight] pairs");
      g.step_weights.clear();
      for (const Json& p : w) {
        if (!p.is_array() || p.size() != 2) throw ParseError("step_weights entries must be [size, weight]");
        g.step_weights.push_back({p[0].get<int>(), p[1].get<std::uint32_t>()});
      }
    }
    if (j.contains("deterministic_mode")) g.deterministic_mode = j["deterministic_mode"].get<bool>();
    if (j.contains("rollout")) out.search.rollout = j["rollout"].get<bool>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("config field has the wrong type: ") + e.what());
  }
  try {
    g.validate();
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return out;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str(), base);
}

}  // namespace freeway
