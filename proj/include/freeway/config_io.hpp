#pragma once

#include <string>

#include "freeway/env.hpp"
#include "freeway/oracle.hpp"

namespace freeway {

// Everything a run can be tuned with: the game constants and the search
// switches.
struct RunConfig {
  GameConfig game;
  oracle::SearchOptions search;
};

// JSON object with every field, speeds as "p/q" strings.
std::string config_to_json(const RunConfig& config);

// Applies the fields present in `text` on top of `base`; unknown fields and
// values that fail GameConfig::validate raise ParseError.
RunConfig config_from_json(const std::string& text, const RunConfig& base = {});

RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

// Accepts "p/q", "p", or a decimal such as "0.75".
Rational parse_rational(const std::string& text);

}  // namespace freeway
