#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "checker.hpp"
#include "interp.hpp"
#include "universe.hpp"

namespace optri::test {

// splitmix64; fixed seeds keep every suite deterministic.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
  bool coin() { return (next() & 1) != 0; }
};

Universe makeUniverse(std::vector<std::pair<std::string, Domain>> vars, long long heapBudget = 0,
                      long long cap = 1000000);

// 2..maxVars int variables with lo = 0 and small spans, sometimes a bool.
// Total state count stays small; suitable for exhaustive checking.
Universe randomScalarUniverse(Rng& rng, int maxVars = 3, int maxSpan = 3);

// Total, fault-free random programs over the universe's int/bool variables:
// assignments are clamped into the target domain, loops are bounded counted
// loops, and there is no heap access.
StatPtr randomProgram(Rng& rng, const Universe& u, int depth);
ExprPtr randomBoolExpr(Rng& rng, const Universe& u, int depth);

// A program whose post-state set is exactly `states` from any initial state:
// a nondeterministic choice over full-store assignments. `states` must hold
// scalar stores over the universe's variables.
StatPtr writerProgram(const std::set<State>& states, const Universe& u);

// Post-state image of a state set under prog; `flagged` reports fuel or
// runtime-error truncation.
std::set<State> imageOf(const ExecContext& cx, const StatPtr& prog, const std::set<State>& from,
                        const ExecLimits& lim, bool& flagged);

inline const Program& emptyProgram() {
  static Program p = [] {
    Program q;
    q.main = mkSkip();
    return q;
  }();
  return p;
}

}  // namespace optri::test
