#include "printer.hpp"

#include <sstream>

namespace optri {

namespace {

// Expression precedence, higher binds tighter.
// 0 ||, 1 &&, 2 !, 3 comparisons, 4 min, 5 + -, 6 *, 7 unary -, 8 atoms.
int exprLevel(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      switch (e.binop) {
        case BinOp::Or: return 0;
        case BinOp::And: return 1;
        case BinOp::Lt:
        case BinOp::Eq:
        case BinOp::In: return 3;
        case BinOp::Min: return 4;
        case BinOp::Add:
        case BinOp::Sub: return 5;
        case BinOp::Mul: return 6;
      }
      return 8;
    case Expr::Kind::Unary:
      return e.unop == UnOp::Not ? 2 : 7;
    default:
      return 8;
  }
}

void emitExpr(std::ostringstream& os, const ExprPtr& e, int minLevel);

void emitAt(std::ostringstream& os, const ExprPtr& e, int minLevel) {
  if (exprLevel(*e) < minLevel) {
    os << '(';
    emitExpr(os, e, 0);
    os << ')';
  } else {
    emitExpr(os, e, 0);
  }
}

void emitExpr(std::ostringstream& os, const ExprPtr& e, int) {
  switch (e->kind) {
    case Expr::Kind::IntLit:
      os << e->intVal;
      return;
    case Expr::Kind::BoolLit:
      os << (e->boolVal ? "tt" : "ff");
      return;
    case Expr::Kind::NilLit:
      os << "nil";
      return;
    case Expr::Kind::Var:
      os << e->name;
      return;
    case Expr::Kind::Index:
      os << e->name << '[';
      emitAt(os, e->a, 0);
      os << ']';
      return;
    case Expr::Kind::Field:
      emitAt(os, e->a, 8);
      os << '.' << e->name;
      return;
    case Expr::Kind::Unary:
      if (e->unop == UnOp::Neg) {
        os << '-';
        emitAt(os, e->a, 7);
        return;
      }
      // sugar forms: !(a = b) -> a != b, !(b < a) -> a <= b
      if (e->a->kind == Expr::Kind::Binary && e->a->binop == BinOp::Eq) {
        emitAt(os, e->a->a, 4);
        os << " != ";
        emitAt(os, e->a->b, 4);
        return;
      }
      if (e->a->kind == Expr::Kind::Binary && e->a->binop == BinOp::Lt) {
        emitAt(os, e->a->b, 4);
        os << " <= ";
        emitAt(os, e->a->a, 4);
        return;
      }
      os << '!';
      emitAt(os, e->a, 2);
      return;
    case Expr::Kind::Binary: {
      const char* op = "";
      int lv = exprLevel(*e);
      switch (e->binop) {
        case BinOp::Or: op = " || "; break;
        case BinOp::And: op = " && "; break;
        case BinOp::Lt: op = " < "; break;
        case BinOp::Eq: op = " = "; break;
        case BinOp::In: op = " in "; break;
        case BinOp::Min: op = " min "; break;
        case BinOp::Add: op = " + "; break;
        case BinOp::Sub: op = " - "; break;
        case BinOp::Mul: op = " * "; break;
      }
      bool nonAssoc = lv == 3;  // comparisons do not chain
      emitAt(os, e->a, nonAssoc ? lv + 1 : lv);
      os << op;
      emitAt(os, e->b, lv + 1);
      return;
    }
    case Expr::Kind::SetLit: {
      os << '{';
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        emitAt(os, e->args[i], 0);
      }
      os << '}';
      return;
    }
    case Expr::Kind::SetRange:
      os << '{';
      emitAt(os, e->a, 0);
      os << " : ";
      emitAt(os, e->b, 0);
      os << '}';
      return;
    case Expr::Kind::Call: {
      os << e->name << '(';
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        emitAt(os, e->args[i], 0);
      }
      os << ')';
      return;
    }
  }
}

std::string exprStr(const ExprPtr& e) {
  std::ostringstream os;
  emitAt(os, e, 0);
  return os.str();
}

void emitLValue(std::ostringstream& os, const LValue& lv) {
  os << lv.var;
  for (auto& a : lv.path) {
    if (a.isField) {
      os << '.' << a.field;
    } else {
      os << '[' << exprStr(a.index) << ']';
    }
  }
}

// Statement levels: 0 choice, 1 seq, 2 atom.
int statLevel(const Stat& s) {
  switch (s.kind) {
    case Stat::Kind::Choice: return 0;
    case Stat::Kind::Seq: return 1;
    default: return 2;
  }
}

void indentTo(std::ostringstream& os, int ind) {
  for (int i = 0; i < ind; ++i) os << ' ';
}

void emitStat(std::ostringstream& os, const StatPtr& s, int ind, int minLevel) {
  if (statLevel(*s) < minLevel) {
    indentTo(os, ind);
    os << "(\n";
    emitStat(os, s, ind + 2, 0);
    os << '\n';
    indentTo(os, ind);
    os << ')';
    return;
  }
  switch (s->kind) {
    case Stat::Kind::Skip:
      indentTo(os, ind);
      os << "skip";
      return;
    case Stat::Kind::Seq:
      emitStat(os, s->s1, ind, 2);
      os << ";\n";
      emitStat(os, s->s2, ind, 1);
      return;
    case Stat::Kind::Choice:
      emitStat(os, s->s1, ind, 0);
      os << '\n';
      indentTo(os, ind);
      os << "[]\n";
      emitStat(os, s->s2, ind, 1);
      return;
    case Stat::Kind::Assign: {
      indentTo(os, ind);
      for (size_t i = 0; i < s->targets.size(); ++i) {
        if (i) os << ", ";
        emitLValue(os, s->targets[i]);
      }
      os << " := ";
      for (size_t i = 0; i < s->exprs.size(); ++i) {
        if (i) os << ", ";
        os << exprStr(s->exprs[i]);
      }
      return;
    }
    case Stat::Kind::RangeAssign:
      indentTo(os, ind);
      os << s->var << " := [" << exprStr(s->e1) << " : " << exprStr(s->e2) << ']';
      return;
    case Stat::Kind::SelectIn:
      indentTo(os, ind);
      os << s->var << " := select in " << exprStr(s->e1);
      return;
    case Stat::Kind::If:
      indentTo(os, ind);
      os << "if " << exprStr(s->e1) << " then\n";
      emitStat(os, s->s1, ind + 2, 0);
      if (s->s2) {
        os << '\n';
        indentTo(os, ind);
        os << "else\n";
        emitStat(os, s->s2, ind + 2, 0);
      }
      os << '\n';
      indentTo(os, ind);
      os << "fi";
      return;
    case Stat::Kind::While:
      indentTo(os, ind);
      os << "while " << exprStr(s->e1) << '\n';
      emitStat(os, s->s1, ind + 2, 0);
      os << '\n';
      indentTo(os, ind);
      os << "elihw";
      return;
    case Stat::Kind::ForUp:
    case Stat::Kind::ForDown:
      indentTo(os, ind);
      os << "for " << s->var << " = " << exprStr(s->e1)
         << (s->kind == Stat::Kind::ForUp ? " to " : " downto ") << exprStr(s->e2) << '\n';
      emitStat(os, s->s1, ind + 2, 0);
      os << '\n';
      indentTo(os, ind);
      os << "rof";
      return;
    case Stat::Kind::ForIn:
      indentTo(os, ind);
      os << "for " << s->var << " in " << exprStr(s->e1) << '\n';
      emitStat(os, s->s1, ind + 2, 0);
      os << '\n';
      indentTo(os, ind);
      os << "rof";
      return;
    case Stat::Kind::ProcCall: {
      indentTo(os, ind);
      os << s->callee << '(';
      for (size_t i = 0; i < s->exprs.size(); ++i) {
        if (i) os << ", ";
        os << exprStr(s->exprs[i]);
      }
      os << ')';
      return;
    }
    case Stat::Kind::AssignCall: {
      indentTo(os, ind);
      os << s->var << " := " << s->callee << '(';
      for (size_t i = 0; i < s->exprs.size(); ++i) {
        if (i) os << ", ";
        os << exprStr(s->exprs[i]);
      }
      os << ')';
      return;
    }
    case Stat::Kind::New: {
      indentTo(os, ind);
      os << s->var << " := new " << s->callee << '(';
      for (size_t i = 0; i < s->fieldInits.size(); ++i) {
        if (i) os << ", ";
        os << s->fieldInits[i].first << ": " << exprStr(s->fieldInits[i].second);
      }
      os << ')';
      return;
    }
    case Stat::Kind::Return:
      indentTo(os, ind);
      os << "return";
      if (s->e1) os << ' ' << exprStr(s->e1);
      return;
  }
}

}  // namespace

std::string printExpr(const ExprPtr& e) { return exprStr(e); }

std::string printStat(const StatPtr& s) {
  std::ostringstream os;
  emitStat(os, s, 0, 0);
  return os.str();
}

std::string printDomain(const Domain& d) {
  std::ostringstream os;
  switch (d.kind) {
    case Domain::Kind::Int:
      os << "int(" << d.lo << ".." << d.hi << ')';
      break;
    case Domain::Kind::Bool:
      os << "bool";
      break;
    case Domain::Kind::Set:
      os << "set(" << d.lo << ".." << d.hi << ')';
      break;
    case Domain::Kind::Ref:
      os << d.record;
      break;
    case Domain::Kind::Array:
      os << "array(" << d.len << ", " << printDomain(*d.elem) << ')';
      break;
  }
  return os.str();
}

std::string printProgram(const Program& p) {
  std::ostringstream os;
  for (auto& r : p.records) {
    os << "record " << r.name << " { ";
    for (size_t i = 0; i < r.fields.size(); ++i) {
      if (i) os << "; ";
      os << r.fields[i].name << ": " << printDomain(r.fields[i].type);
    }
    os << " }\n\n";
  }
  for (auto& pr : p.procs) {
    os << "proc ";
    switch (pr.ret.kind) {
      case RetType::Kind::Void: os << "void"; break;
      case RetType::Kind::Int: os << "int"; break;
      case RetType::Kind::Bool: os << "bool"; break;
      case RetType::Kind::Set: os << "set"; break;
      case RetType::Kind::Ref: os << pr.ret.record; break;
    }
    os << ' ' << pr.name << '(';
    for (size_t i = 0; i < pr.formals.size(); ++i) {
      if (i) os << ", ";
      os << pr.formals[i].name << ": " << printDomain(pr.formals[i].type);
    }
    os << ')';
    if (!pr.locals.empty()) {
      os << " vars ";
      for (size_t i = 0; i < pr.locals.size(); ++i) {
        if (i) os << ", ";
        os << pr.locals[i].name << ": " << printDomain(pr.locals[i].type);
      }
    }
    os << " {\n";
    os << printStat(pr.body);
    os << "\n}\n\n";
  }
  os << printStat(p.main);
  os << '\n';
  return os.str();
}

}  // namespace optri
