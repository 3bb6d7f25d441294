#include "ast.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace optri {

namespace {
std::shared_ptr<Expr> newExpr(Expr::Kind k, SrcPos p) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->pos = p;
  return e;
}
std::shared_ptr<Stat> newStat(Stat::Kind k, SrcPos p) {
  auto s = std::make_shared<Stat>();
  s->kind = k;
  s->pos = p;
  return s;
}
}  // namespace

ExprPtr mkIntLit(long long v, SrcPos p) {
  auto e = newExpr(Expr::Kind::IntLit, p);
  e->intVal = v;
  return e;
}
ExprPtr mkBoolLit(bool v, SrcPos p) {
  auto e = newExpr(Expr::Kind::BoolLit, p);
  e->boolVal = v;
  return e;
}
ExprPtr mkNil(SrcPos p) { return newExpr(Expr::Kind::NilLit, p); }
ExprPtr mkVar(std::string name, SrcPos p) {
  auto e = newExpr(Expr::Kind::Var, p);
  e->name = std::move(name);
  return e;
}
ExprPtr mkIndex(std::string arr, ExprPtr idx, SrcPos p) {
  auto e = newExpr(Expr::Kind::Index, p);
  e->name = std::move(arr);
  e->a = std::move(idx);
  return e;
}
ExprPtr mkField(ExprPtr base, std::string field, SrcPos p) {
  auto e = newExpr(Expr::Kind::Field, p);
  e->a = std::move(base);
  e->name = std::move(field);
  return e;
}
ExprPtr mkUnary(UnOp op, ExprPtr a, SrcPos p) {
  auto e = newExpr(Expr::Kind::Unary, p);
  e->unop = op;
  e->a = std::move(a);
  return e;
}
ExprPtr mkBinary(BinOp op, ExprPtr a, ExprPtr b, SrcPos p) {
  auto e = newExpr(Expr::Kind::Binary, p);
  e->binop = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
ExprPtr mkSetLit(std::vector<ExprPtr> elems, SrcPos p) {
  auto e = newExpr(Expr::Kind::SetLit, p);
  e->args = std::move(elems);
  return e;
}
ExprPtr mkSetRange(ExprPtr lo, ExprPtr hi, SrcPos p) {
  auto e = newExpr(Expr::Kind::SetRange, p);
  e->a = std::move(lo);
  e->b = std::move(hi);
  return e;
}
ExprPtr mkCall(std::string name, std::vector<ExprPtr> args, SrcPos p) {
  auto e = newExpr(Expr::Kind::Call, p);
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

StatPtr mkSkip(SrcPos p) { return newStat(Stat::Kind::Skip, p); }
StatPtr mkSeq(StatPtr a, StatPtr b, SrcPos p) {
  auto s = newStat(Stat::Kind::Seq, p);
  s->s1 = std::move(a);
  s->s2 = std::move(b);
  return s;
}
StatPtr mkChoice(StatPtr a, StatPtr b, SrcPos p) {
  auto s = newStat(Stat::Kind::Choice, p);
  s->s1 = std::move(a);
  s->s2 = std::move(b);
  return s;
}
StatPtr mkAssign(std::vector<LValue> targets, std::vector<ExprPtr> rhs, SrcPos p) {
  auto s = newStat(Stat::Kind::Assign, p);
  s->targets = std::move(targets);
  s->exprs = std::move(rhs);
  return s;
}
StatPtr mkAssignVar(std::string var, ExprPtr rhs, SrcPos p) {
  LValue lv;
  lv.pos = p;
  lv.var = std::move(var);
  return mkAssign({lv}, {std::move(rhs)}, p);
}
StatPtr mkRangeAssign(std::string var, ExprPtr lo, ExprPtr hi, SrcPos p) {
  auto s = newStat(Stat::Kind::RangeAssign, p);
  s->var = std::move(var);
  s->e1 = std::move(lo);
  s->e2 = std::move(hi);
  return s;
}
StatPtr mkSelectIn(std::string var, ExprPtr set, SrcPos p) {
  auto s = newStat(Stat::Kind::SelectIn, p);
  s->var = std::move(var);
  s->e1 = std::move(set);
  return s;
}
StatPtr mkIf(ExprPtr cond, StatPtr thenS, StatPtr elseS, SrcPos p) {
  auto s = newStat(Stat::Kind::If, p);
  s->e1 = std::move(cond);
  s->s1 = std::move(thenS);
  s->s2 = std::move(elseS);
  return s;
}
StatPtr mkWhile(ExprPtr cond, StatPtr body, SrcPos p) {
  auto s = newStat(Stat::Kind::While, p);
  s->e1 = std::move(cond);
  s->s1 = std::move(body);
  return s;
}
StatPtr mkForUp(std::string var, ExprPtr lo, ExprPtr hi, StatPtr body, SrcPos p) {
  auto s = newStat(Stat::Kind::ForUp, p);
  s->var = std::move(var);
  s->e1 = std::move(lo);
  s->e2 = std::move(hi);
  s->s1 = std::move(body);
  return s;
}
StatPtr mkForDown(std::string var, ExprPtr hi, ExprPtr lo, StatPtr body, SrcPos p) {
  auto s = newStat(Stat::Kind::ForDown, p);
  s->var = std::move(var);
  s->e1 = std::move(hi);
  s->e2 = std::move(lo);
  s->s1 = std::move(body);
  return s;
}
StatPtr mkForIn(std::string var, ExprPtr set, StatPtr body, SrcPos p) {
  auto s = newStat(Stat::Kind::ForIn, p);
  s->var = std::move(var);
  s->e1 = std::move(set);
  s->s1 = std::move(body);
  return s;
}
StatPtr mkProcCall(std::string callee, std::vector<ExprPtr> actuals, SrcPos p) {
  auto s = newStat(Stat::Kind::ProcCall, p);
  s->callee = std::move(callee);
  s->exprs = std::move(actuals);
  return s;
}
StatPtr mkAssignCall(std::string var, std::string callee, std::vector<ExprPtr> actuals, SrcPos p) {
  auto s = newStat(Stat::Kind::AssignCall, p);
  s->var = std::move(var);
  s->callee = std::move(callee);
  s->exprs = std::move(actuals);
  return s;
}
StatPtr mkNew(std::string var, std::string recordType,
              std::vector<std::pair<std::string, ExprPtr>> inits, SrcPos p) {
  auto s = newStat(Stat::Kind::New, p);
  s->var = std::move(var);
  s->callee = std::move(recordType);
  s->fieldInits = std::move(inits);
  return s;
}
StatPtr mkReturn(ExprPtr e, SrcPos p) {
  auto s = newStat(Stat::Kind::Return, p);
  s->e1 = std::move(e);
  return s;
}

Domain Domain::intRange(long long lo, long long hi) {
  Domain d;
  d.kind = Kind::Int;
  d.lo = lo;
  d.hi = hi;
  return d;
}
Domain Domain::boolean() {
  Domain d;
  d.kind = Kind::Bool;
  return d;
}
Domain Domain::setRange(long long lo, long long hi) {
  Domain d;
  d.kind = Kind::Set;
  d.lo = lo;
  d.hi = hi;
  return d;
}
Domain Domain::ref(std::string record, bool prealloc) {
  Domain d;
  d.kind = Kind::Ref;
  d.record = std::move(record);
  d.prealloc = prealloc;
  return d;
}
Domain Domain::array(int len, Domain elem, bool prealloc) {
  Domain d;
  d.kind = Kind::Array;
  d.len = len;
  d.elem = std::make_shared<Domain>(std::move(elem));
  d.prealloc = prealloc;
  return d;
}

bool sameType(const Domain& a, const Domain& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Domain::Kind::Ref:
      return a.record == b.record;
    case Domain::Kind::Array:
      return a.len == b.len && a.elem && b.elem && sameType(*a.elem, *b.elem);
    default:
      return true;
  }
}

const FieldDecl* RecordDecl::field(const std::string& n) const {
  for (auto& f : fields)
    if (f.name == n) return &f;
  return nullptr;
}
int RecordDecl::fieldIndex(const std::string& n) const {
  for (size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == n) return static_cast<int>(i);
  return -1;
}

const RecordDecl* Program::record(const std::string& n) const {
  for (auto& r : records)
    if (r.name == n) return &r;
  return nullptr;
}
const ProcDef* Program::proc(const std::string& n) const {
  for (auto& p : procs)
    if (p.name == n) return &p;
  return nullptr;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit:
      return a.intVal == b.intVal;
    case Expr::Kind::BoolLit:
      return a.boolVal == b.boolVal;
    case Expr::Kind::NilLit:
      return true;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Index:
      return a.name == b.name && equal(a.a, b.a);
    case Expr::Kind::Field:
      return a.name == b.name && equal(a.a, b.a);
    case Expr::Kind::Unary:
      return a.unop == b.unop && equal(a.a, b.a);
    case Expr::Kind::Binary:
      return a.binop == b.binop && equal(a.a, b.a) && equal(a.b, b.b);
    case Expr::Kind::SetRange:
      return equal(a.a, b.a) && equal(a.b, b.b);
    case Expr::Kind::SetLit:
    case Expr::Kind::Call: {
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!equal(a.args[i], b.args[i])) return false;
      return true;
    }
  }
  return false;
}

namespace {
bool equalLv(const LValue& a, const LValue& b) {
  if (a.var != b.var || a.path.size() != b.path.size()) return false;
  for (size_t i = 0; i < a.path.size(); ++i) {
    if (a.path[i].isField != b.path[i].isField) return false;
    if (a.path[i].isField) {
      if (a.path[i].field != b.path[i].field) return false;
    } else if (!equal(a.path[i].index, b.path[i].index)) {
      return false;
    }
  }
  return true;
}
}  // namespace

bool equal(const StatPtr& a, const StatPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal(const Stat& a, const Stat& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stat::Kind::Skip:
      return true;
    case Stat::Kind::Seq:
    case Stat::Kind::Choice:
      return equal(a.s1, b.s1) && equal(a.s2, b.s2);
    case Stat::Kind::Assign: {
      if (a.targets.size() != b.targets.size() || a.exprs.size() != b.exprs.size()) return false;
      for (size_t i = 0; i < a.targets.size(); ++i)
        if (!equalLv(a.targets[i], b.targets[i])) return false;
      for (size_t i = 0; i < a.exprs.size(); ++i)
        if (!equal(a.exprs[i], b.exprs[i])) return false;
      return true;
    }
    case Stat::Kind::RangeAssign:
      return a.var == b.var && equal(a.e1, b.e1) && equal(a.e2, b.e2);
    case Stat::Kind::SelectIn:
      return a.var == b.var && equal(a.e1, b.e1);
    case Stat::Kind::If:
      return equal(a.e1, b.e1) && equal(a.s1, b.s1) && equal(a.s2, b.s2);
    case Stat::Kind::While:
      return equal(a.e1, b.e1) && equal(a.s1, b.s1);
    case Stat::Kind::ForUp:
    case Stat::Kind::ForDown:
      return a.var == b.var && equal(a.e1, b.e1) && equal(a.e2, b.e2) && equal(a.s1, b.s1);
    case Stat::Kind::ForIn:
      return a.var == b.var && equal(a.e1, b.e1) && equal(a.s1, b.s1);
    case Stat::Kind::ProcCall:
    case Stat::Kind::AssignCall: {
      if (a.var != b.var || a.callee != b.callee || a.exprs.size() != b.exprs.size()) return false;
      for (size_t i = 0; i < a.exprs.size(); ++i)
        if (!equal(a.exprs[i], b.exprs[i])) return false;
      return true;
    }
    case Stat::Kind::New: {
      if (a.var != b.var || a.callee != b.callee || a.fieldInits.size() != b.fieldInits.size())
        return false;
      for (size_t i = 0; i < a.fieldInits.size(); ++i) {
        if (a.fieldInits[i].first != b.fieldInits[i].first) return false;
        if (!equal(a.fieldInits[i].second, b.fieldInits[i].second)) return false;
      }
      return true;
    }
    case Stat::Kind::Return:
      return equal(a.e1, b.e1);
  }
  return false;
}

int childCount(const Stat& s) {
  switch (s.kind) {
    case Stat::Kind::Seq:
    case Stat::Kind::Choice:
      return 2;
    case Stat::Kind::If:
      return s.s2 ? 2 : 1;
    case Stat::Kind::While:
    case Stat::Kind::ForUp:
    case Stat::Kind::ForDown:
    case Stat::Kind::ForIn:
      return 1;
    default:
      return 0;
  }
}

StatPtr child(const Stat& s, int i) {
  if (i < 0 || i >= childCount(s)) return nullptr;
  if (i == 0) return s.s1;
  return s.s2;
}

StatPtr withChild(const Stat& s, int i, StatPtr c) {
  auto n = std::make_shared<Stat>(s);
  if (i == 0)
    n->s1 = std::move(c);
  else
    n->s2 = std::move(c);
  return n;
}

StatPtr subterm(StatPtr root, const std::vector<int>& path) {
  StatPtr cur = std::move(root);
  for (int i : path) {
    if (!cur) return nullptr;
    cur = child(*cur, i);
  }
  return cur;
}

StatPtr replaceSubterm(StatPtr root, const std::vector<int>& path, StatPtr repl) {
  if (path.empty()) return repl;
  if (!root) return nullptr;
  auto c = child(*root, path[0]);
  if (!c) return nullptr;
  auto nc = replaceSubterm(c, {path.begin() + 1, path.end()}, std::move(repl));
  if (!nc) return nullptr;
  return withChild(*root, path[0], nc);
}

std::vector<StatPtr> flattenSeq(StatPtr s) {
  std::vector<StatPtr> out;
  std::function<void(const StatPtr&)> go = [&](const StatPtr& n) {
    if (n && n->kind == Stat::Kind::Seq) {
      go(n->s1);
      go(n->s2);
    } else if (n) {
      out.push_back(n);
    }
  };
  go(s);
  return out;
}

StatPtr seqOf(const std::vector<StatPtr>& parts, SrcPos p) {
  if (parts.empty()) return mkSkip(p);
  StatPtr acc = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) acc = mkSeq(parts[i], acc, p);
  return acc;
}

namespace {
void collectCallees(const StatPtr& s, std::set<std::string>& out) {
  if (!s) return;
  if (s->kind == Stat::Kind::ProcCall || s->kind == Stat::Kind::AssignCall) out.insert(s->callee);
  collectCallees(s->s1, out);
  collectCallees(s->s2, out);
}
}  // namespace

StatPtr desugarForLoop(const Stat& f) {
  ExprPtr v = mkVar(f.var, f.pos);
  ExprPtr one = mkIntLit(1, f.pos);
  if (f.kind == Stat::Kind::ForUp) {
    ExprPtr cond = mkUnary(UnOp::Not, mkBinary(BinOp::Lt, f.e2, v, f.pos), f.pos);
    StatPtr inc = mkAssignVar(f.var, mkBinary(BinOp::Add, v, one, f.pos), f.pos);
    return mkSeq(mkAssignVar(f.var, f.e1, f.pos),
                 mkWhile(cond, mkSeq(f.s1, inc, f.pos), f.pos), f.pos);
  }
  ExprPtr cond = mkUnary(UnOp::Not, mkBinary(BinOp::Lt, v, f.e2, f.pos), f.pos);
  StatPtr dec = mkAssignVar(f.var, mkBinary(BinOp::Sub, v, one, f.pos), f.pos);
  return mkSeq(mkAssignVar(f.var, f.e1, f.pos),
               mkWhile(cond, mkSeq(f.s1, dec, f.pos), f.pos), f.pos);
}

void markRecursion(Program& p) {
  std::map<std::string, std::set<std::string>> edges;
  for (auto& pr : p.procs) {
    std::set<std::string> callees;
    collectCallees(pr.body, callees);
    edges[pr.name] = std::move(callees);
  }
  // A procedure is recursive when it can reach itself in the call graph.
  for (auto& pr : p.procs) {
    std::set<std::string> seen;
    std::vector<std::string> work(edges[pr.name].begin(), edges[pr.name].end());
    bool cyc = false;
    while (!work.empty() && !cyc) {
      std::string cur = work.back();
      work.pop_back();
      if (cur == pr.name) {
        cyc = true;
        break;
      }
      if (!seen.insert(cur).second) continue;
      auto it = edges.find(cur);
      if (it != edges.end())
        for (auto& n : it->second) work.push_back(n);
    }
    pr.recursive = cyc;
  }
}

}  // namespace optri
