#pragma once

#include <set>
#include <string>
#include <utility>

#include "ast.hpp"
#include "state.hpp"
#include "universe.hpp"

namespace optri {

struct ExecLimits {
  long long fuel = 10000;  // per-path step budget
  int depthBound = 64;     // recursive-frame depth; exceeding counts as fuel exhaustion
};

struct ExecContext {
  const Program* prog = nullptr;  // record and procedure declarations
  const Universe* uni = nullptr;
};

// Outcomes of exploring every nondeterministic resolution from one state.
struct RunOutcomes {
  std::set<State> finals;  // canonical final states
  std::set<std::string> errors;  // "kind@line:col", deduplicated
  bool fuelExhausted = false;
  long long maxFuelUsed = 0;

  bool anyError() const { return !errors.empty(); }
};

RunOutcomes run(const ExecContext& cx, const StatPtr& stat, const State& init,
                const ExecLimits& lim);

struct BehaviorSet {
  std::set<std::pair<State, State>> pairs;  // canonical (initial, final)
  bool anyRuntimeError = false;
  bool anyFuelExhausted = false;
  long long statesEnumerated = 0;
  long long maxFuelUsed = 0;
  std::set<std::string> errorKinds;

  bool flagged() const { return anyRuntimeError || anyFuelExhausted; }
};

struct PostStates {
  std::set<State> states;
  bool anyRuntimeError = false;
  bool anyFuelExhausted = false;
  long long statesEnumerated = 0;
  long long maxFuelUsed = 0;
  std::set<std::string> errorKinds;

  bool flagged() const { return anyRuntimeError || anyFuelExhausted; }
};

// Union over all enumerated initial states. jobs > 1 splits the initial
// states over threads; the merged result is order-independent.
BehaviorSet behaviors(const ExecContext& cx, const StatPtr& stat, const ExecLimits& lim,
                      int jobs = 1);
PostStates poststates(const ExecContext& cx, const StatPtr& stat, const ExecLimits& lim,
                      int jobs = 1);

// Evaluates a pure boolean expression in a bare state (no frames). Throws
// EvalFailure when evaluation faults.
struct EvalFailure {
  std::string kind;
  SrcPos pos;
};
bool evalBool(const ExecContext& cx, const ExprPtr& e, const State& st);

}  // namespace optri
