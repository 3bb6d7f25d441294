#pragma once

#include <string>

#include "ast.hpp"

namespace optri {

// Parses a whole .opa program: record declarations, procedure definitions,
// then one top-level statement. Throws ParseError with position.
Program parseProgram(const std::string& src);

// Parses a single statement (used by proof scripts and the inliner's tests).
StatPtr parseStat(const std::string& src);

// Parses a single expression (e.g. conjunction conditions).
ExprPtr parseExpr(const std::string& src);

}  // namespace optri
