#pragma once

#include <string>

#include "ast.hpp"

namespace optri {

std::string printExpr(const ExprPtr& e);
std::string printStat(const StatPtr& s);
std::string printProgram(const Program& p);
std::string printDomain(const Domain& d);

}  // namespace optri
