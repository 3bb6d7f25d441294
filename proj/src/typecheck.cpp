#include "typecheck.hpp"

#include <map>
#include <set>
#include <string>

#include "diag.hpp"
#include "intrinsics.hpp"

namespace optri {

namespace {

struct Ty {
  enum class K { Int, Bool, Set, Ref, Array, Nil, Void };
  K k = K::Int;
  std::string record;          // Ref
  int len = 0;                 // Array
  Domain::Kind elemKind = Domain::Kind::Int;
  std::string elemRecord;

  static Ty ofDomain(const Domain& d) {
    Ty t;
    switch (d.kind) {
      case Domain::Kind::Int: t.k = K::Int; break;
      case Domain::Kind::Bool: t.k = K::Bool; break;
      case Domain::Kind::Set: t.k = K::Set; break;
      case Domain::Kind::Ref:
        t.k = K::Ref;
        t.record = d.record;
        break;
      case Domain::Kind::Array:
        t.k = K::Array;
        t.len = d.len;
        t.elemKind = d.elem->kind;
        if (d.elem->kind == Domain::Kind::Ref) t.elemRecord = d.elem->record;
        break;
    }
    return t;
  }
};

std::string tyName(const Ty& t) {
  switch (t.k) {
    case Ty::K::Int: return "int";
    case Ty::K::Bool: return "bool";
    case Ty::K::Set: return "set";
    case Ty::K::Ref: return t.record;
    case Ty::K::Array: return "array";
    case Ty::K::Nil: return "nil";
    case Ty::K::Void: return "void";
  }
  return "?";
}

// Does a value of type src fit a slot of domain kind dst?
bool fits(const Ty& src, const Domain& dst) {
  switch (dst.kind) {
    case Domain::Kind::Int: return src.k == Ty::K::Int;
    case Domain::Kind::Bool: return src.k == Ty::K::Bool;
    case Domain::Kind::Set: return src.k == Ty::K::Set;
    case Domain::Kind::Ref:
      return src.k == Ty::K::Nil || (src.k == Ty::K::Ref && src.record == dst.record);
    case Domain::Kind::Array:
      return src.k == Ty::K::Array && src.len == dst.len && src.elemKind == dst.elem->kind &&
             (dst.elem->kind != Domain::Kind::Ref || src.elemRecord == dst.elem->record);
  }
  return false;
}

struct ProcCtx {
  const ProcDef* def = nullptr;  // null at top level
  std::map<std::string, Domain> frame;  // recursive procs: formals + locals
};

class Checker {
 public:
  Checker(const Program& p, const Universe* u) : p_(p), u_(u) {}

  void run() {
    checkRecords();
    std::set<std::string> procNames;
    for (auto& pr : p_.procs) {
      if (!procNames.insert(pr.name).second)
        throw TypeError(pr.pos, "duplicate procedure '" + pr.name + "'");
    }
    for (auto& pr : p_.procs) checkProc(pr);
    ProcCtx top;
    checkStat(p_.main, top, false);
  }

  void checkTopStat(const StatPtr& s) {
    ProcCtx top;
    checkStat(s, top, false);
  }

  void checkBool(const ExprPtr& e) {
    ProcCtx top;
    Ty t = typeExpr(e, top);
    if (u_ && t.k != Ty::K::Bool)
      throw TypeError(e->pos, "condition must be boolean, found " + tyName(t));
  }

 private:
  const Program& p_;
  const Universe* u_;

  void checkDomainRecord(const Domain& d, SrcPos pos) {
    if (d.kind == Domain::Kind::Ref && !p_.record(d.record))
      throw TypeError(pos, "undeclared record type '" + d.record + "'");
    if (d.kind == Domain::Kind::Array && d.elem->kind == Domain::Kind::Ref &&
        !p_.record(d.elem->record))
      throw TypeError(pos, "undeclared record type '" + d.elem->record + "'");
  }

  void checkRecords() {
    std::set<std::string> names;
    for (auto& r : p_.records) {
      if (!names.insert(r.name).second)
        throw TypeError(r.pos, "duplicate record '" + r.name + "'");
    }
    for (auto& r : p_.records) {
      std::set<std::string> fs;
      for (auto& f : r.fields) {
        if (!fs.insert(f.name).second)
          throw TypeError(r.pos, "duplicate field '" + f.name + "' in record " + r.name);
        if (f.type.kind == Domain::Kind::Set || f.type.kind == Domain::Kind::Array)
          throw TypeError(r.pos, "record fields must be int, bool or references");
        checkDomainRecord(f.type, r.pos);
      }
    }
  }

  static bool endsInReturn(const StatPtr& s) {
    if (!s) return false;
    switch (s->kind) {
      case Stat::Kind::Return:
        return true;
      case Stat::Kind::Seq:
        return endsInReturn(s->s2);
      case Stat::Kind::Choice:
        return endsInReturn(s->s1) && endsInReturn(s->s2);
      case Stat::Kind::If:
        return s->s2 && endsInReturn(s->s1) && endsInReturn(s->s2);
      default:
        return false;
    }
  }

  void collectVarRefs(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::Var || e->kind == Expr::Kind::Index) out.insert(e->name);
    collectVarRefs(e->a, out);
    collectVarRefs(e->b, out);
    for (auto& a : e->args) collectVarRefs(a, out);
  }

  void collectVarRefs(const StatPtr& s, std::set<std::string>& out) {
    if (!s) return;
    if (!s->var.empty()) out.insert(s->var);
    for (auto& t : s->targets) {
      out.insert(t.var);
      for (auto& acc : t.path)
        if (!acc.isField) collectVarRefs(acc.index, out);
    }
    collectVarRefs(s->e1, out);
    collectVarRefs(s->e2, out);
    for (auto& e : s->exprs) collectVarRefs(e, out);
    for (auto& [f, e] : s->fieldInits) collectVarRefs(e, out);
    collectVarRefs(s->s1, out);
    collectVarRefs(s->s2, out);
  }

  void checkProc(const ProcDef& pr) {
    ProcCtx ctx;
    ctx.def = &pr;
    std::set<std::string> names;
    for (auto& f : pr.formals) {
      if (!names.insert(f.name).second)
        throw TypeError(pr.pos, "duplicate formal '" + f.name + "' in " + pr.name);
      checkDomainRecord(f.type, pr.pos);
    }
    for (auto& l : pr.locals) {
      if (!names.insert(l.name).second)
        throw TypeError(pr.pos, "duplicate local '" + l.name + "' in " + pr.name);
      checkDomainRecord(l.type, pr.pos);
    }

    if (pr.recursive) {
      // Recursive procedures run in per-invocation frames: every variable the
      // body touches must be a formal or a declared local, and every callee
      // must itself be frame-executed.
      for (auto& f : pr.formals) ctx.frame[f.name] = f.type;
      for (auto& l : pr.locals) ctx.frame[l.name] = l.type;
      std::set<std::string> refs;
      collectVarRefs(pr.body, refs);
      for (auto& v : refs) {
        if (!ctx.frame.count(v))
          throw TypeError(pr.pos, "recursive procedure " + pr.name + " references '" + v +
                                      "', which is neither a formal nor a declared local");
      }
    } else {
      if (!pr.locals.empty())
        throw TypeError(pr.pos, "non-recursive procedure " + pr.name +
                                    " cannot declare locals; its variables are the universe's");
      if (u_) {
        for (auto& f : pr.formals) {
          const Domain* g = u_->find(f.name);
          if (!g)
            throw TypeError(pr.pos, "formal '" + f.name + "' of non-recursive procedure " +
                                        pr.name + " is not declared in the universe");
          if (!sameType(*g, f.type))
            throw TypeError(pr.pos, "formal '" + f.name + "' of " + pr.name +
                                        " differs in type from the universe declaration");
        }
      }
    }

    if (pr.ret.kind != RetType::Kind::Void && !endsInReturn(pr.body))
      throw TypeError(pr.pos,
                      "non-void procedure " + pr.name + " must end in return on every path");
    checkStat(pr.body, ctx, true);
  }

  const Domain* lookupVar(const std::string& name, const ProcCtx& ctx, SrcPos pos) {
    if (ctx.def && ctx.def->recursive) {
      auto it = ctx.frame.find(name);
      if (it != ctx.frame.end()) return &it->second;
      throw TypeError(pos, "unknown frame variable '" + name + "'");
    }
    if (!u_) return nullptr;
    const Domain* d = u_->find(name);
    if (!d) throw TypeError(pos, "variable '" + name + "' is not declared in the universe");
    return d;
  }

  Ty typeExpr(const ExprPtr& e, const ProcCtx& ctx) {
    switch (e->kind) {
      case Expr::Kind::IntLit:
        return {.k = Ty::K::Int};
      case Expr::Kind::BoolLit:
        return {.k = Ty::K::Bool};
      case Expr::Kind::NilLit:
        return {.k = Ty::K::Nil};
      case Expr::Kind::Var: {
        const Domain* d = lookupVar(e->name, ctx, e->pos);
        if (!d) return {.k = Ty::K::Int};  // no universe: unknown, treated loosely
        return Ty::ofDomain(*d);
      }
      case Expr::Kind::Index: {
        const Domain* d = lookupVar(e->name, ctx, e->pos);
        Ty idx = typeExpr(e->a, ctx);
        if (u_ || (ctx.def && ctx.def->recursive)) {
          if (d) {
            if (d->kind != Domain::Kind::Array)
              throw TypeError(e->pos, "'" + e->name + "' is not an array");
            if (idx.k != Ty::K::Int) throw TypeError(e->pos, "array index must be int");
            return Ty::ofDomain(*d->elem);
          }
        }
        return {.k = Ty::K::Int};
      }
      case Expr::Kind::Field: {
        Ty base = typeExpr(e->a, ctx);
        if (!u_ && !(ctx.def && ctx.def->recursive)) return {.k = Ty::K::Int};
        if (base.k != Ty::K::Ref)
          throw TypeError(e->pos, "field access on non-reference (" + tyName(base) + ")");
        const RecordDecl* r = p_.record(base.record);
        if (!r) throw TypeError(e->pos, "undeclared record '" + base.record + "'");
        const FieldDecl* f = r->field(e->name);
        if (!f)
          throw TypeError(e->pos, "record " + base.record + " has no field '" + e->name + "'");
        return Ty::ofDomain(f->type);
      }
      case Expr::Kind::Unary: {
        Ty a = typeExpr(e->a, ctx);
        if (!typed(ctx)) return a;
        if (e->unop == UnOp::Neg) {
          if (a.k != Ty::K::Int) throw TypeError(e->pos, "unary - needs an int");
          return {.k = Ty::K::Int};
        }
        if (a.k != Ty::K::Bool) throw TypeError(e->pos, "! needs a boolean");
        return {.k = Ty::K::Bool};
      }
      case Expr::Kind::Binary:
        return typeBinary(e, ctx);
      case Expr::Kind::SetLit: {
        for (auto& el : e->args) {
          Ty t = typeExpr(el, ctx);
          if (typed(ctx) && t.k != Ty::K::Int)
            throw TypeError(el->pos, "set elements must be int");
        }
        return {.k = Ty::K::Set};
      }
      case Expr::Kind::SetRange: {
        Ty a = typeExpr(e->a, ctx), b = typeExpr(e->b, ctx);
        if (typed(ctx) && (a.k != Ty::K::Int || b.k != Ty::K::Int))
          throw TypeError(e->pos, "set range bounds must be int");
        return {.k = Ty::K::Set};
      }
      case Expr::Kind::Call: {
        Intrinsic in;
        if (!lookupIntrinsic(e->name, in))
          throw TypeError(e->pos, "unknown intrinsic '" + e->name + "'");
        if (static_cast<int>(e->args.size()) != intrinsicArity(in))
          throw TypeError(e->pos, "intrinsic " + e->name + " expects " +
                                      std::to_string(intrinsicArity(in)) + " arguments");
        Ty a0 = typeExpr(e->args[0], ctx);
        Ty a1 = typeExpr(e->args[1], ctx);
        if (typed(ctx)) {
          if (a0.k != Ty::K::Array || a0.elemKind != Domain::Kind::Int)
            throw TypeError(e->pos, e->name + " expects an int array first");
          if (in == Intrinsic::FindMin && a1.k != Ty::K::Set)
            throw TypeError(e->pos, "findMin expects an exclusion set second");
          if (in == Intrinsic::FindRank && a1.k != Ty::K::Int)
            throw TypeError(e->pos, "findRank expects an int rank second");
        }
        return {.k = Ty::K::Int};
      }
    }
    return {.k = Ty::K::Int};
  }

  bool typed(const ProcCtx& ctx) const { return u_ != nullptr || (ctx.def && ctx.def->recursive); }

  Ty typeBinary(const ExprPtr& e, const ProcCtx& ctx) {
    Ty a = typeExpr(e->a, ctx);
    Ty b = typeExpr(e->b, ctx);
    if (!typed(ctx)) return a;
    auto isSetish = [](const Ty& t) { return t.k == Ty::K::Set; };
    switch (e->binop) {
      case BinOp::Add:
      case BinOp::Sub: {
        if (isSetish(a) || isSetish(b)) {
          auto elemOk = [&](const Ty& t) { return isSetish(t) || t.k == Ty::K::Int; };
          if (!elemOk(a) || !elemOk(b))
            throw TypeError(e->pos, "set operation needs set or int operands");
          if (e->binop == BinOp::Sub && !isSetish(a))
            throw TypeError(e->pos, "set difference needs a set on the left");
          return {.k = Ty::K::Set};
        }
        if (a.k != Ty::K::Int || b.k != Ty::K::Int)
          throw TypeError(e->pos, "arithmetic needs int operands");
        return {.k = Ty::K::Int};
      }
      case BinOp::Mul:
      case BinOp::Min:
        if (a.k != Ty::K::Int || b.k != Ty::K::Int)
          throw TypeError(e->pos, "arithmetic needs int operands");
        return {.k = Ty::K::Int};
      case BinOp::Lt:
        if (a.k != Ty::K::Int || b.k != Ty::K::Int)
          throw TypeError(e->pos, "< compares ints");
        return {.k = Ty::K::Bool};
      case BinOp::Eq: {
        bool ok = (a.k == b.k && a.k != Ty::K::Array) ||
                  (a.k == Ty::K::Ref && b.k == Ty::K::Nil) ||
                  (a.k == Ty::K::Nil && b.k == Ty::K::Ref) ||
                  (a.k == Ty::K::Nil && b.k == Ty::K::Nil);
        if (a.k == Ty::K::Ref && b.k == Ty::K::Ref && a.record != b.record) ok = false;
        if (!ok)
          throw TypeError(e->pos, "= compares equal types, found " + tyName(a) + " and " +
                                      tyName(b));
        return {.k = Ty::K::Bool};
      }
      case BinOp::And:
      case BinOp::Or:
        if (a.k != Ty::K::Bool || b.k != Ty::K::Bool)
          throw TypeError(e->pos, "boolean connective needs boolean operands");
        return {.k = Ty::K::Bool};
      case BinOp::In:
        if (a.k != Ty::K::Int || b.k != Ty::K::Set)
          throw TypeError(e->pos, "membership needs int in set");
        return {.k = Ty::K::Bool};
    }
    return a;
  }

  // Resolves the domain an lvalue writes into.
  const Domain* lvalueDomain(const LValue& lv, const ProcCtx& ctx, Domain& scratch) {
    const Domain* d = lookupVar(lv.var, ctx, lv.pos);
    if (!d) return nullptr;
    for (auto& acc : lv.path) {
      if (!acc.isField) {
        if (d->kind != Domain::Kind::Array)
          throw TypeError(lv.pos, "'" + lv.var + "' is not an array");
        Ty idx = typeExpr(acc.index, ctx);
        if (idx.k != Ty::K::Int) throw TypeError(lv.pos, "array index must be int");
        d = d->elem.get();
      } else {
        if (d->kind != Domain::Kind::Ref)
          throw TypeError(lv.pos, "field assignment through a non-reference");
        const RecordDecl* r = p_.record(d->record);
        if (!r) throw TypeError(lv.pos, "undeclared record '" + d->record + "'");
        const FieldDecl* f = r->field(acc.field);
        if (!f)
          throw TypeError(lv.pos, "record " + d->record + " has no field '" + acc.field + "'");
        scratch = f->type;
        d = &scratch;
      }
    }
    return d;
  }

  void checkCall(const StatPtr& s, const ProcCtx& ctx) {
    const ProcDef* callee = p_.proc(s->callee);
    if (!callee) throw TypeError(s->pos, "unknown procedure '" + s->callee + "'");
    if (s->exprs.size() != callee->formals.size())
      throw TypeError(s->pos, "call to " + s->callee + " expects " +
                                  std::to_string(callee->formals.size()) + " arguments, found " +
                                  std::to_string(s->exprs.size()));
    if (ctx.def && ctx.def->recursive && !callee->recursive)
      throw TypeError(s->pos, "recursive procedure " + ctx.def->name +
                                  " may only call frame-executed (recursive) procedures");
    for (size_t i = 0; i < s->exprs.size(); ++i) {
      Ty t = typeExpr(s->exprs[i], ctx);
      if (typed(ctx) && !fits(t, callee->formals[i].type))
        throw TypeError(s->exprs[i]->pos, "argument " + std::to_string(i + 1) + " of " +
                                              s->callee + " has type " + tyName(t));
    }
    if (s->kind == Stat::Kind::AssignCall) {
      if (callee->ret.kind == RetType::Kind::Void)
        throw TypeError(s->pos, s->callee + " returns no value");
      const Domain* dv = lookupVar(s->var, ctx, s->pos);
      if (dv) {
        Ty rt;
        switch (callee->ret.kind) {
          case RetType::Kind::Int: rt.k = Ty::K::Int; break;
          case RetType::Kind::Bool: rt.k = Ty::K::Bool; break;
          case RetType::Kind::Set: rt.k = Ty::K::Set; break;
          case RetType::Kind::Ref:
            rt.k = Ty::K::Ref;
            rt.record = callee->ret.record;
            break;
          default: break;
        }
        if (!fits(rt, *dv))
          throw TypeError(s->pos, "result of " + s->callee + " does not fit '" + s->var + "'");
      }
    }
  }

  void checkStat(const StatPtr& s, const ProcCtx& ctx, bool tail) {
    switch (s->kind) {
      case Stat::Kind::Skip:
        return;
      case Stat::Kind::Seq:
        checkStat(s->s1, ctx, false);
        checkStat(s->s2, ctx, tail);
        return;
      case Stat::Kind::Choice:
        checkStat(s->s1, ctx, tail);
        checkStat(s->s2, ctx, tail);
        return;
      case Stat::Kind::Assign: {
        for (size_t i = 0; i < s->targets.size(); ++i) {
          Domain scratch;
          const Domain* d = lvalueDomain(s->targets[i], ctx, scratch);
          Ty t = typeExpr(s->exprs[i], ctx);
          if (d && typed(ctx) && !fits(t, *d))
            throw TypeError(s->targets[i].pos,
                            "cannot assign " + tyName(t) + " to '" + s->targets[i].var + "'");
        }
        return;
      }
      case Stat::Kind::RangeAssign: {
        const Domain* d = lookupVar(s->var, ctx, s->pos);
        if (d && d->kind != Domain::Kind::Int)
          throw TypeError(s->pos, "range assignment target must be int");
        Ty lo = typeExpr(s->e1, ctx), hi = typeExpr(s->e2, ctx);
        if (typed(ctx) && (lo.k != Ty::K::Int || hi.k != Ty::K::Int))
          throw TypeError(s->pos, "range bounds must be int");
        return;
      }
      case Stat::Kind::SelectIn: {
        const Domain* d = lookupVar(s->var, ctx, s->pos);
        if (d && d->kind != Domain::Kind::Int)
          throw TypeError(s->pos, "select target must be int");
        Ty t = typeExpr(s->e1, ctx);
        if (typed(ctx) && t.k != Ty::K::Set)
          throw TypeError(s->pos, "select needs a set");
        return;
      }
      case Stat::Kind::If: {
        Ty c = typeExpr(s->e1, ctx);
        if (typed(ctx) && c.k != Ty::K::Bool)
          throw TypeError(s->pos, "if condition must be boolean");
        checkStat(s->s1, ctx, tail);
        if (s->s2) checkStat(s->s2, ctx, tail);
        return;
      }
      case Stat::Kind::While: {
        Ty c = typeExpr(s->e1, ctx);
        if (typed(ctx) && c.k != Ty::K::Bool)
          throw TypeError(s->pos, "while condition must be boolean");
        checkStat(s->s1, ctx, false);
        return;
      }
      case Stat::Kind::ForUp:
      case Stat::Kind::ForDown: {
        const Domain* d = lookupVar(s->var, ctx, s->pos);
        if (d && d->kind != Domain::Kind::Int)
          throw TypeError(s->pos, "loop variable must be int");
        Ty a = typeExpr(s->e1, ctx), b = typeExpr(s->e2, ctx);
        if (typed(ctx) && (a.k != Ty::K::Int || b.k != Ty::K::Int))
          throw TypeError(s->pos, "loop bounds must be int");
        checkStat(s->s1, ctx, false);
        return;
      }
      case Stat::Kind::ForIn: {
        const Domain* d = lookupVar(s->var, ctx, s->pos);
        if (d && d->kind != Domain::Kind::Int)
          throw TypeError(s->pos, "loop variable must be int");
        Ty t = typeExpr(s->e1, ctx);
        if (typed(ctx) && t.k != Ty::K::Set)
          throw TypeError(s->pos, "for .. in needs a set");
        checkStat(s->s1, ctx, false);
        return;
      }
      case Stat::Kind::ProcCall:
      case Stat::Kind::AssignCall:
        checkCall(s, ctx);
        return;
      case Stat::Kind::New: {
        const RecordDecl* r = p_.record(s->callee);
        if (!r) throw TypeError(s->pos, "undeclared record '" + s->callee + "'");
        const Domain* dv = lookupVar(s->var, ctx, s->pos);
        if (dv && (dv->kind != Domain::Kind::Ref || dv->record != s->callee))
          throw TypeError(s->pos, "'" + s->var + "' cannot hold a " + s->callee + " reference");
        std::set<std::string> seen;
        for (auto& [f, e] : s->fieldInits) {
          const FieldDecl* fd = r->field(f);
          if (!fd) throw TypeError(s->pos, "record " + s->callee + " has no field '" + f + "'");
          if (!seen.insert(f).second)
            throw TypeError(s->pos, "duplicate initializer for field '" + f + "'");
          Ty t = typeExpr(e, ctx);
          if (typed(ctx) && !fits(t, fd->type))
            throw TypeError(e->pos, "initializer for field '" + f + "' has type " + tyName(t));
        }
        return;
      }
      case Stat::Kind::Return: {
        if (!ctx.def) throw TypeError(s->pos, "return outside a procedure");
        if (!tail) throw TypeError(s->pos, "return must be in tail position");
        if (ctx.def->ret.kind == RetType::Kind::Void) {
          if (s->e1) throw TypeError(s->pos, ctx.def->name + " returns no value");
          return;
        }
        if (!s->e1) throw TypeError(s->pos, ctx.def->name + " must return a value");
        Ty t = typeExpr(s->e1, ctx);
        if (!typed(ctx)) return;
        bool ok = false;
        switch (ctx.def->ret.kind) {
          case RetType::Kind::Int: ok = t.k == Ty::K::Int; break;
          case RetType::Kind::Bool: ok = t.k == Ty::K::Bool; break;
          case RetType::Kind::Set: ok = t.k == Ty::K::Set; break;
          case RetType::Kind::Ref:
            ok = t.k == Ty::K::Nil || (t.k == Ty::K::Ref && t.record == ctx.def->ret.record);
            break;
          default: break;
        }
        if (!ok) throw TypeError(s->pos, "return value has type " + tyName(t));
        return;
      }
    }
  }
};

}  // namespace

void typecheckProgram(const Program& p, const Universe* u) { Checker(p, u).run(); }

void typecheckStat(const StatPtr& s, const Program& p, const Universe& u) {
  Checker(p, &u).checkTopStat(s);
}

void typecheckBoolExpr(const ExprPtr& e, const Program& p, const Universe& u) {
  Checker(p, &u).checkBool(e);
}

}  // namespace optri
