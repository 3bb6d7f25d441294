#pragma once

#include <string>
#include <vector>

#include "ast.hpp"
#include "universe.hpp"

namespace optri {

// Optional arguments of a rewrite application.
struct RewriteArgs {
  std::string dir;  // seq-assoc: "left" | "right"
  std::string var;  // dead-store-intro target
  ExprPtr expr;     // dead-store-intro stored expression
};

// Applies the named semantics-preserving rewrite to the subterm of program at
// path and returns the whole rewritten program. Applicability violations
// throw ScriptError. Every rule here is equivalence-preserving on every
// universe where both sides are well-typed; the test suite checks that
// property by enumeration.
StatPtr applyRewrite(const std::string& name, const StatPtr& program,
                     const std::vector<int>& path, const RewriteArgs& args, const Program& ctx,
                     const Universe* u);

const std::vector<std::string>& rewriteNames();

}  // namespace optri
