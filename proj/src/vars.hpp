#pragma once

#include <set>
#include <string>

#include "ast.hpp"

namespace optri {

// Sound over-approximations of the identifiers a program reads and writes.
// Array and field writes include the base identifier in both sets. Calls to
// non-recursive procedures contribute their (global) formals and body sets;
// frame-executed callees contribute only their actual-argument reads.
std::set<std::string> freeVars(const ExprPtr& e);
std::set<std::string> freeVars(const StatPtr& s, const Program& ctx);
std::set<std::string> writeVars(const StatPtr& s, const Program& ctx);

// True when the statement touches no heap location and makes no call:
// assignments through plain variables or array cells, ranges, selects, skip.
bool scalarOnly(const StatPtr& s);

}  // namespace optri
