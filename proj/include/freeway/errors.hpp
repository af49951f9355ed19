#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freeway {

// Base of everything the library throws on purpose. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (bad lane, n = 0, cooldown at search start).
class UsageError : public Error {
 public:
  using Error::Error;
};

// step() on a session whose timestep already reached the game length.
class GameOverError : public Error {
 public:
  using Error::Error;
};

// The search frontier emptied before any crossing was found.
class NoPathError : public Error {
 public:
  using Error::Error;
};

// Malformed dataset/trace/config input. line() is 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Internal invariant broken, e.g. a parent chain that never reaches the start.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace freeway
