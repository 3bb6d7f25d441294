#include "rewrite.hpp"

#include <algorithm>

#include "diag.hpp"
#include "vars.hpp"

namespace optri {

namespace {

[[noreturn]] void nope(const std::string& name, const std::string& why) {
  throw ScriptError("rewrite " + name + " not applicable: " + why);
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (auto& x : a)
    if (b.count(x)) return false;
  return true;
}

ExprPtr leExpr(const ExprPtr& lo, const ExprPtr& hi) {
  return mkUnary(UnOp::Not, mkBinary(BinOp::Lt, hi, lo));
}

// Loop bodies eligible for unwinding must not write the loop variable or any
// variable the bounds read (bounds are re-evaluated at every test).
void checkUnwindable(const std::string& name, const Stat& f, const Program& ctx) {
  auto writes = writeVars(f.s1, ctx);
  auto boundVars = freeVars(f.e1);
  for (auto& v : freeVars(f.e2)) boundVars.insert(v);
  if (writes.count(f.var)) nope(name, "loop body writes the loop variable");
  if (!disjoint(writes, boundVars)) nope(name, "loop body writes a bound variable");
  if (boundVars.count(f.var)) nope(name, "loop bounds read the loop variable");
}

StatPtr unwindLast(const Stat& f, const Program& ctx, const std::string& name) {
  if (f.kind != Stat::Kind::ForUp && f.kind != Stat::Kind::ForDown)
    nope(name, "target is not a counted for loop");
  checkUnwindable(name, f, ctx);
  ExprPtr v = mkVar(f.var);
  ExprPtr one = mkIntLit(1);
  bool up = f.kind == Stat::Kind::ForUp;
  // up:   for v = lo to hi      -> for v = lo to hi-1; S; v := v+1
  // down: for v = hi downto lo  -> for v = hi downto lo+1; S; v := v-1
  ExprPtr lo = up ? f.e1 : f.e2;
  ExprPtr hi = up ? f.e2 : f.e1;
  StatPtr inner = up ? mkForUp(f.var, f.e1, mkBinary(BinOp::Sub, f.e2, one), f.s1)
                     : mkForDown(f.var, f.e1, mkBinary(BinOp::Add, f.e2, one), f.s1);
  StatPtr bump = up ? mkAssignVar(f.var, mkBinary(BinOp::Add, v, one))
                    : mkAssignVar(f.var, mkBinary(BinOp::Sub, v, one));
  StatPtr taken = mkSeq(inner, mkSeq(f.s1, bump));
  StatPtr empty = mkAssignVar(f.var, f.e1);
  return mkIf(leExpr(lo, hi), taken, empty);
}

StatPtr unwindFirst(const Stat& f, const Program& ctx, const std::string& name) {
  if (f.kind != Stat::Kind::ForUp && f.kind != Stat::Kind::ForDown)
    nope(name, "target is not a counted for loop");
  checkUnwindable(name, f, ctx);
  ExprPtr one = mkIntLit(1);
  bool up = f.kind == Stat::Kind::ForUp;
  ExprPtr lo = up ? f.e1 : f.e2;
  ExprPtr hi = up ? f.e2 : f.e1;
  StatPtr rest = up ? mkForUp(f.var, mkBinary(BinOp::Add, f.e1, one), f.e2, f.s1)
                    : mkForDown(f.var, mkBinary(BinOp::Sub, f.e1, one), f.e2, f.s1);
  StatPtr taken = mkSeq(mkAssignVar(f.var, f.e1), mkSeq(f.s1, rest));
  StatPtr empty = mkAssignVar(f.var, f.e1);
  return mkIf(leExpr(lo, hi), taken, empty);
}

bool plainVarAssign(const Stat& s, std::string& var, ExprPtr& rhs) {
  if (s.kind != Stat::Kind::Assign || s.targets.size() != 1 || !s.targets[0].path.empty())
    return false;
  var = s.targets[0].var;
  rhs = s.exprs[0];
  return true;
}

// A stored expression must be total and in-domain so eliminating or
// introducing the dead store cannot add or remove a fault path.
void checkStorable(const std::string& name, const ExprPtr& e, const Domain& target,
                   const Universe& u) {
  switch (e->kind) {
    case Expr::Kind::IntLit:
      if (target.kind != Domain::Kind::Int || e->intVal < target.lo || e->intVal > target.hi)
        nope(name, "literal outside the target domain");
      return;
    case Expr::Kind::BoolLit:
      if (target.kind != Domain::Kind::Bool) nope(name, "literal outside the target domain");
      return;
    case Expr::Kind::NilLit:
      if (target.kind != Domain::Kind::Ref) nope(name, "nil needs a reference target");
      return;
    case Expr::Kind::Var: {
      const Domain* d = u.find(e->name);
      if (!d) nope(name, "unknown variable '" + e->name + "'");
      if (d->kind != target.kind) nope(name, "source and target kinds differ");
      switch (d->kind) {
        case Domain::Kind::Int:
        case Domain::Kind::Set:
          if (d->lo < target.lo || d->hi > target.hi)
            nope(name, "source domain exceeds the target domain");
          return;
        case Domain::Kind::Ref:
          if (d->record != target.record) nope(name, "reference records differ");
          return;
        case Domain::Kind::Bool:
          return;
        case Domain::Kind::Array:
          if (d->len != target.len || d->elem->kind != target.elem->kind ||
              (d->elem->kind == Domain::Kind::Int &&
               (d->elem->lo < target.elem->lo || d->elem->hi > target.elem->hi)) ||
              (d->elem->kind == Domain::Kind::Ref && d->elem->record != target.elem->record))
            nope(name, "array shapes differ");
          return;
      }
      return;
    }
    default:
      nope(name, "stored expression must be a literal or a variable");
  }
}

StatPtr transform(const std::string& name, const StatPtr& t, const RewriteArgs& args,
                  const Program& ctx, const Universe* u) {
  if (name == "seq-assoc") {
    if (t->kind != Stat::Kind::Seq) nope(name, "target is not a sequence");
    if (args.dir == "right") {
      if (t->s1->kind != Stat::Kind::Seq) nope(name, "left child is not a sequence");
      return mkSeq(t->s1->s1, mkSeq(t->s1->s2, t->s2));
    }
    if (args.dir == "left") {
      if (t->s2->kind != Stat::Kind::Seq) nope(name, "right child is not a sequence");
      return mkSeq(mkSeq(t->s1, t->s2->s1), t->s2->s2);
    }
    nope(name, "dir must be \"left\" or \"right\"");
  }
  if (name == "skip-elim-left") {
    if (t->kind != Stat::Kind::Seq || t->s1->kind != Stat::Kind::Skip)
      nope(name, "target is not skip; S");
    return t->s2;
  }
  if (name == "skip-elim-right") {
    if (t->kind != Stat::Kind::Seq || t->s2->kind != Stat::Kind::Skip)
      nope(name, "target is not S; skip");
    return t->s1;
  }
  if (name == "for-unwind-last") return unwindLast(*t, ctx, name);
  if (name == "for-unwind-first") return unwindFirst(*t, ctx, name);
  if (name == "for-to-while") {
    if (t->kind != Stat::Kind::ForUp && t->kind != Stat::Kind::ForDown)
      nope(name, "target is not a counted for loop");
    return desugarForLoop(*t);
  }
  if (name == "while-unroll-once") {
    if (t->kind != Stat::Kind::While) nope(name, "target is not a while loop");
    return mkIf(t->e1, mkSeq(t->s1, t));
  }
  if (name == "commute-independent-assigns") {
    if (t->kind != Stat::Kind::Seq) nope(name, "target is not a sequence");
    const StatPtr& a = t->s1;
    const StatPtr& b = t->s2;
    if (!scalarOnly(a) || !scalarOnly(b))
      nope(name, "both statements must be scalar assignments");
    auto wa = writeVars(a, ctx), wb = writeVars(b, ctx);
    auto fa = freeVars(a, ctx), fb = freeVars(b, ctx);
    fa.insert(wa.begin(), wa.end());
    fb.insert(wb.begin(), wb.end());
    if (!disjoint(wa, fb) || !disjoint(wb, fa)) nope(name, "statements are not independent");
    return mkSeq(b, a);
  }
  if (name == "dead-store-elim") {
    if (!u) nope(name, "needs a universe for domain checks");
    if (t->kind != Stat::Kind::Seq) nope(name, "target is not a sequence");
    std::string x1, x2;
    ExprPtr e1, e2;
    if (!plainVarAssign(*t->s1, x1, e1) || !plainVarAssign(*t->s2, x2, e2))
      nope(name, "both statements must be plain assignments");
    if (x1 != x2) nope(name, "assignments target different variables");
    if (freeVars(e2).count(x1)) nope(name, "second assignment reads the stored variable");
    const Domain* d = u->find(x1);
    if (!d) nope(name, "unknown variable '" + x1 + "'");
    checkStorable(name, e1, *d, *u);
    return t->s2;
  }
  if (name == "dead-store-intro") {
    if (!u) nope(name, "needs a universe for domain checks");
    if (args.var.empty() || !args.expr) nope(name, "needs var and expr arguments");
    std::string x2;
    ExprPtr e2;
    if (!plainVarAssign(*t, x2, e2)) nope(name, "target must be a plain assignment");
    if (x2 != args.var) nope(name, "target variable differs from the argument");
    if (freeVars(e2).count(args.var)) nope(name, "assignment reads the stored variable");
    const Domain* d = u->find(args.var);
    if (!d) nope(name, "unknown variable '" + args.var + "'");
    checkStorable(name, args.expr, *d, *u);
    return mkSeq(mkAssignVar(args.var, args.expr), t);
  }
  throw ScriptError("unknown rewrite '" + name + "'");
}

}  // namespace

StatPtr applyRewrite(const std::string& name, const StatPtr& program,
                     const std::vector<int>& path, const RewriteArgs& args, const Program& ctx,
                     const Universe* u) {
  StatPtr target = subterm(program, path);
  if (!target) throw ScriptError("rewrite path does not address a statement");
  StatPtr replaced = transform(name, target, args, ctx, u);
  StatPtr out = replaceSubterm(program, path, replaced);
  if (!out) throw ScriptError("rewrite path does not address a statement");
  return out;
}

const std::vector<std::string>& rewriteNames() {
  static const std::vector<std::string> names = {
      "seq-assoc",        "skip-elim-left",  "skip-elim-right",
      "for-unwind-last",  "for-unwind-first", "for-to-while",
      "while-unroll-once", "commute-independent-assigns",
      "dead-store-elim",  "dead-store-intro"};
  return names;
}

}  // namespace optri
