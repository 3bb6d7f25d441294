#include "inliner.hpp"

#include "diag.hpp"

namespace optri {

namespace {

// Rewrites returns in tail position. wantValue decides between assigning the
// returned expression to target and discarding it.
StatPtr rewriteReturns(const StatPtr& s, const std::string& target, bool wantValue, bool tail) {
  switch (s->kind) {
    case Stat::Kind::Return: {
      if (!tail) throw InlineError("cannot inline: return is not in tail position");
      if (!wantValue || !s->e1) return mkSkip(s->pos);
      return mkAssignVar(target, s->e1, s->pos);
    }
    case Stat::Kind::Seq: {
      auto a = rewriteReturns(s->s1, target, wantValue, false);
      auto b = rewriteReturns(s->s2, target, wantValue, tail);
      return mkSeq(a, b, s->pos);
    }
    case Stat::Kind::Choice: {
      auto a = rewriteReturns(s->s1, target, wantValue, tail);
      auto b = rewriteReturns(s->s2, target, wantValue, tail);
      return mkChoice(a, b, s->pos);
    }
    case Stat::Kind::If: {
      auto a = rewriteReturns(s->s1, target, wantValue, tail);
      StatPtr b = s->s2 ? rewriteReturns(s->s2, target, wantValue, tail) : nullptr;
      return mkIf(s->e1, a, b, s->pos);
    }
    case Stat::Kind::While: {
      auto b = rewriteReturns(s->s1, target, wantValue, false);
      return mkWhile(s->e1, b, s->pos);
    }
    case Stat::Kind::ForUp:
    case Stat::Kind::ForDown: {
      auto b = rewriteReturns(s->s1, target, wantValue, false);
      return s->kind == Stat::Kind::ForUp ? mkForUp(s->var, s->e1, s->e2, b, s->pos)
                                          : mkForDown(s->var, s->e1, s->e2, b, s->pos);
    }
    case Stat::Kind::ForIn: {
      auto b = rewriteReturns(s->s1, target, wantValue, false);
      return mkForIn(s->var, s->e1, b, s->pos);
    }
    default:
      return s;
  }
}

}  // namespace

StatPtr inlineCall(const StatPtr& call, const Program& defs) {
  if (!call ||
      (call->kind != Stat::Kind::ProcCall && call->kind != Stat::Kind::AssignCall))
    throw InlineError("not a procedure call statement");
  const ProcDef* pd = defs.proc(call->callee);
  if (!pd) throw InlineError("unknown procedure '" + call->callee + "'");
  if (pd->recursive)
    throw InlineError("procedure '" + call->callee +
                      "' is recursive; use the inductive equivalence rule");
  if (call->exprs.size() != pd->formals.size())
    throw InlineError("arity mismatch: " + call->callee + " expects " +
                      std::to_string(pd->formals.size()) + " arguments, got " +
                      std::to_string(call->exprs.size()));

  bool wantValue = call->kind == Stat::Kind::AssignCall;
  if (wantValue && pd->ret.kind == RetType::Kind::Void)
    throw InlineError("procedure '" + call->callee + "' returns no value");

  StatPtr body = rewriteReturns(pd->body, call->var, wantValue, true);
  if (pd->formals.empty()) return body;

  std::vector<LValue> targets;
  for (auto& f : pd->formals) {
    LValue lv;
    lv.pos = call->pos;
    lv.var = f.name;
    targets.push_back(std::move(lv));
  }
  StatPtr binding = mkAssign(std::move(targets), call->exprs, call->pos);
  return mkSeq(binding, body, call->pos);
}

}  // namespace optri
