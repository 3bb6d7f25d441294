#pragma once

#include "ast.hpp"
#include "universe.hpp"

namespace optri {

// Full program check. When a universe is supplied every variable reference is
// resolved against it (or against the enclosing frame for recursive
// procedures) and expression/assignment typing is enforced. Without a
// universe only structural rules are checked: declaration well-formedness,
// return placement, call arities, intrinsic names, frame restrictions.
// Throws TypeError.
void typecheckProgram(const Program& p, const Universe* u);

// Checks one top-level statement in the declaration context of p (records and
// procedures visible, returns forbidden).
void typecheckStat(const StatPtr& s, const Program& p, const Universe& u);

// Checks that e is a boolean expression over the universe's variables.
void typecheckBoolExpr(const ExprPtr& e, const Program& p, const Universe& u);

}  // namespace optri
