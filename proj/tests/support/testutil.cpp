#include "testutil.hpp"

#include <algorithm>

namespace optri::test {

Universe makeUniverse(std::vector<std::pair<std::string, Domain>> vars, long long heapBudget,
                      long long cap) {
  Universe u;
  u.vars = std::move(vars);
  std::sort(u.vars.begin(), u.vars.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  u.heapBudget = heapBudget;
  u.enumerationCap = cap;
  u.hash = "test";
  return u;
}

Universe randomScalarUniverse(Rng& rng, int maxVars, int maxSpan) {
  int nInts = 2 + rng.below(maxVars - 1);
  std::vector<std::pair<std::string, Domain>> vars;
  for (int i = 0; i < nInts; ++i) {
    std::string name = "v" + std::to_string(i);
    vars.emplace_back(name, Domain::intRange(0, 1 + rng.below(maxSpan)));
  }
  if (rng.coin()) vars.emplace_back("b0", Domain::boolean());
  return makeUniverse(std::move(vars));
}

namespace {

std::vector<std::pair<std::string, Domain>> intVars(const Universe& u) {
  std::vector<std::pair<std::string, Domain>> out;
  for (auto& [n, d] : u.vars)
    if (d.kind == Domain::Kind::Int) out.push_back({n, d});
  return out;
}

std::vector<std::string> boolVars(const Universe& u) {
  std::vector<std::string> out;
  for (auto& [n, d] : u.vars)
    if (d.kind == Domain::Kind::Bool) out.push_back(n);
  return out;
}

ExprPtr randomIntExpr(Rng& rng, const Universe& u, int depth) {
  auto ints = intVars(u);
  if (depth <= 0 || rng.coin()) {
    if (!ints.empty() && rng.coin()) {
      auto& [n, d] = ints[static_cast<size_t>(rng.below(static_cast<int>(ints.size())))];
      return mkVar(n);
    }
    return mkIntLit(rng.below(4));
  }
  BinOp op = rng.coin() ? BinOp::Add : BinOp::Min;
  return mkBinary(op, randomIntExpr(rng, u, depth - 1), randomIntExpr(rng, u, depth - 1));
}

// Assignment whose value always lands inside the target domain: the low side
// is nonnegative by construction, the high side is clamped with min.
StatPtr clampedAssign(Rng& rng, const Universe& u, const std::string& var, const Domain& d) {
  ExprPtr e = randomIntExpr(rng, u, 2);
  return mkAssignVar(var, mkBinary(BinOp::Min, e, mkIntLit(d.hi)));
}

}  // namespace

ExprPtr randomBoolExpr(Rng& rng, const Universe& u, int depth) {
  auto ints = intVars(u);
  auto bools = boolVars(u);
  if (depth <= 0 || rng.below(3) == 0) {
    int pick = rng.below(3);
    if (pick == 0 && !bools.empty())
      return mkVar(bools[static_cast<size_t>(rng.below(static_cast<int>(bools.size())))]);
    if (!ints.empty()) {
      auto& [n, d] = ints[static_cast<size_t>(rng.below(static_cast<int>(ints.size())))];
      long long lit = d.lo + rng.below(static_cast<int>(d.hi - d.lo + 1));
      return mkBinary(rng.coin() ? BinOp::Lt : BinOp::Eq, mkVar(n), mkIntLit(lit));
    }
    return mkBoolLit(rng.coin());
  }
  switch (rng.below(3)) {
    case 0:
      return mkUnary(UnOp::Not, randomBoolExpr(rng, u, depth - 1));
    case 1:
      return mkBinary(BinOp::And, randomBoolExpr(rng, u, depth - 1),
                      randomBoolExpr(rng, u, depth - 1));
    default:
      return mkBinary(BinOp::Or, randomBoolExpr(rng, u, depth - 1),
                      randomBoolExpr(rng, u, depth - 1));
  }
}

StatPtr randomProgram(Rng& rng, const Universe& u, int depth) {
  auto ints = intVars(u);
  auto bools = boolVars(u);
  if (depth <= 0 || rng.below(4) == 0) {
    int pick = rng.below(8);
    if (pick == 0) return mkSkip();
    if (pick == 1 && !bools.empty()) {
      return mkAssignVar(bools[static_cast<size_t>(rng.below(static_cast<int>(bools.size())))],
                         randomBoolExpr(rng, u, 1));
    }
    if (ints.empty()) return mkSkip();
    auto& [n, d] = ints[static_cast<size_t>(rng.below(static_cast<int>(ints.size())))];
    if (pick <= 3) {
      // nondeterministic range, occasionally empty
      long long a = d.lo + rng.below(static_cast<int>(d.hi - d.lo + 1));
      long long b = d.lo + rng.below(static_cast<int>(d.hi - d.lo + 1));
      if (rng.below(6) == 0) std::swap(a, b);  // may produce an empty range
      return mkRangeAssign(n, mkIntLit(std::min(a, b)), mkIntLit(std::max(a, b)));
    }
    return clampedAssign(rng, u, n, d);
  }
  switch (rng.below(5)) {
    case 0:
      return mkSeq(randomProgram(rng, u, depth - 1), randomProgram(rng, u, depth - 1));
    case 1:
      return mkChoice(randomProgram(rng, u, depth - 1), randomProgram(rng, u, depth - 1));
    case 2: {
      StatPtr elseS = rng.coin() ? randomProgram(rng, u, depth - 1) : nullptr;
      return mkIf(randomBoolExpr(rng, u, 1), randomProgram(rng, u, depth - 1), elseS);
    }
    case 3: {
      if (ints.empty()) return mkSkip();
      auto& [n, d] = ints[static_cast<size_t>(rng.below(static_cast<int>(ints.size())))];
      long long hi = std::min<long long>(d.hi, 1 + rng.below(2));
      return mkForUp(n, mkIntLit(d.lo), mkIntLit(hi), randomProgram(rng, u, depth - 1));
    }
    default:
      return mkSeq(randomProgram(rng, u, depth - 1), randomProgram(rng, u, depth - 1));
  }
}

StatPtr writerProgram(const std::set<State>& states, const Universe& u) {
  if (states.empty()) {
    // a nowhere-terminating choice: an empty range has no resolutions
    const std::string& v = u.vars.front().first;
    return mkRangeAssign(v, mkIntLit(1), mkIntLit(0));
  }
  std::vector<StatPtr> alts;
  for (auto& st : states) {
    std::vector<StatPtr> assigns;
    for (auto& [name, val] : st.store) {
      if (val.kind == Value::Kind::Int)
        assigns.push_back(mkAssignVar(name, mkIntLit(val.i)));
      else if (val.kind == Value::Kind::Bool)
        assigns.push_back(mkAssignVar(name, mkBoolLit(val.b)));
    }
    alts.push_back(seqOf(assigns));
  }
  StatPtr out = alts[0];
  for (size_t i = 1; i < alts.size(); ++i) out = mkChoice(out, alts[i]);
  return out;
}

std::set<State> imageOf(const ExecContext& cx, const StatPtr& prog, const std::set<State>& from,
                        const ExecLimits& lim, bool& flagged) {
  std::set<State> out;
  flagged = false;
  for (auto& s : from) {
    RunOutcomes r = run(cx, prog, s, lim);
    if (r.anyError() || r.fuelExhausted) flagged = true;
    out.insert(r.finals.begin(), r.finals.end());
  }
  return out;
}

}  // namespace optri::test
