#pragma once

#include "ast.hpp"

namespace optri {

// Expands a non-recursive call statement into the formal-binding multiple
// assignment followed by the procedure body. Tail returns become assignments
// to the call target (or skip when the value is discarded). Throws
// InlineError for recursive callees, arity mismatches and non-tail returns.
StatPtr inlineCall(const StatPtr& call, const Program& defs);

}  // namespace optri
