#pragma once

#include <stdexcept>
#include <string>

#include "ast.hpp"

namespace optri {

// Errors carry a 1-based source position. what() is already formatted.
struct PosError : std::runtime_error {
  SrcPos pos;
  std::string rawMessage;
  PosError(const std::string& kind, SrcPos p, const std::string& msg)
      : std::runtime_error(kind + " at " + std::to_string(p.line) + ":" + std::to_string(p.col) +
                           ": " + msg),
        pos(p),
        rawMessage(msg) {}
};

struct ParseError : PosError {
  ParseError(SrcPos p, const std::string& msg) : PosError("parse error", p, msg) {}
};

struct TypeError : PosError {
  TypeError(SrcPos p, const std::string& msg) : PosError("type error", p, msg) {}
};

struct UniverseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UniverseTooLarge : std::runtime_error {
  unsigned long long actualSize;
  unsigned long long cap;
  UniverseTooLarge(unsigned long long actual, unsigned long long c)
      : std::runtime_error("universe too large: " + std::to_string(actual) +
                           " states exceed enumeration cap " + std::to_string(c)),
        actualSize(actual),
        cap(c) {}
};

struct InlineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScriptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace optri
