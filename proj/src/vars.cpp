#include "vars.hpp"

#include <functional>

namespace optri {

namespace {

void exprVars(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Var || e->kind == Expr::Kind::Index) out.insert(e->name);
  exprVars(e->a, out);
  exprVars(e->b, out);
  for (auto& a : e->args) exprVars(a, out);
}

bool exprTouchesHeap(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == Expr::Kind::Field) return true;
  if (exprTouchesHeap(e->a) || exprTouchesHeap(e->b)) return true;
  for (auto& a : e->args)
    if (exprTouchesHeap(a)) return true;
  return false;
}

struct Collector {
  const Program& ctx;
  std::set<std::string> reads, writes;
  std::set<std::string> visiting;  // procedure re-entry guard

  void stat(const StatPtr& s) {
    if (!s) return;
    switch (s->kind) {
      case Stat::Kind::Skip:
        return;
      case Stat::Kind::Seq:
      case Stat::Kind::Choice:
        stat(s->s1);
        stat(s->s2);
        return;
      case Stat::Kind::Assign: {
        for (auto& t : s->targets) {
          writes.insert(t.var);
          if (!t.path.empty()) reads.insert(t.var);
          for (auto& acc : t.path)
            if (!acc.isField) exprVars(acc.index, reads);
        }
        for (auto& e : s->exprs) exprVars(e, reads);
        return;
      }
      case Stat::Kind::RangeAssign:
        writes.insert(s->var);
        exprVars(s->e1, reads);
        exprVars(s->e2, reads);
        return;
      case Stat::Kind::SelectIn:
        writes.insert(s->var);
        exprVars(s->e1, reads);
        return;
      case Stat::Kind::If:
      case Stat::Kind::While:
        exprVars(s->e1, reads);
        stat(s->s1);
        stat(s->s2);
        return;
      case Stat::Kind::ForUp:
      case Stat::Kind::ForDown:
        writes.insert(s->var);
        exprVars(s->e1, reads);
        exprVars(s->e2, reads);
        stat(s->s1);
        return;
      case Stat::Kind::ForIn:
        writes.insert(s->var);
        exprVars(s->e1, reads);
        stat(s->s1);
        return;
      case Stat::Kind::ProcCall:
      case Stat::Kind::AssignCall: {
        for (auto& e : s->exprs) exprVars(e, reads);
        if (s->kind == Stat::Kind::AssignCall) writes.insert(s->var);
        const ProcDef* callee = ctx.proc(s->callee);
        if (callee && !callee->recursive && visiting.insert(s->callee).second) {
          // Globals semantics: the binding writes the formals, then the body
          // runs over the same namespace.
          for (auto& f : callee->formals) writes.insert(f.name);
          stat(callee->body);
          visiting.erase(s->callee);
        }
        return;
      }
      case Stat::Kind::New:
        writes.insert(s->var);
        for (auto& [f, e] : s->fieldInits) exprVars(e, reads);
        return;
      case Stat::Kind::Return:
        exprVars(s->e1, reads);
        return;
    }
  }
};

}  // namespace

std::set<std::string> freeVars(const ExprPtr& e) {
  std::set<std::string> out;
  exprVars(e, out);
  return out;
}

std::set<std::string> freeVars(const StatPtr& s, const Program& ctx) {
  Collector c{ctx, {}, {}, {}};
  c.stat(s);
  return c.reads;
}

std::set<std::string> writeVars(const StatPtr& s, const Program& ctx) {
  Collector c{ctx, {}, {}, {}};
  c.stat(s);
  return c.writes;
}

bool scalarOnly(const StatPtr& s) {
  if (!s) return true;
  switch (s->kind) {
    case Stat::Kind::Skip:
      return true;
    case Stat::Kind::Assign: {
      for (auto& t : s->targets)
        for (auto& acc : t.path)
          if (acc.isField || exprTouchesHeap(acc.index)) return false;
      for (auto& e : s->exprs)
        if (exprTouchesHeap(e)) return false;
      return true;
    }
    case Stat::Kind::RangeAssign:
      return !exprTouchesHeap(s->e1) && !exprTouchesHeap(s->e2);
    case Stat::Kind::SelectIn:
      return !exprTouchesHeap(s->e1);
    default:
      return false;
  }
}

}  // namespace optri
