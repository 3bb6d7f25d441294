#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace optri {

struct SrcPos {
  int line = 0;
  int col = 0;
};

// ---------------------------------------------------------------------------
// Expressions. Pure by construction: no node allocates, assigns, or calls a
// procedure. Intrinsic applications are resolved against a fixed registry
// (findMin, findRank) during type checking.
// ---------------------------------------------------------------------------

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Lt, Eq, And, Or, Min, In };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    IntLit,    // intVal
    BoolLit,   // boolVal
    NilLit,
    Var,       // name
    Index,     // name[ a ]
    Field,     // a . name
    Unary,     // unop a
    Binary,    // a binop b
    SetLit,    // { args... }
    SetRange,  // { a : b }
    Call       // name(args...)   -- intrinsics only
  };

  Kind kind;
  SrcPos pos;
  long long intVal = 0;
  bool boolVal = false;
  std::string name;
  UnOp unop = UnOp::Neg;
  BinOp binop = BinOp::Add;
  ExprPtr a, b;
  std::vector<ExprPtr> args;
};

ExprPtr mkIntLit(long long v, SrcPos p = {});
ExprPtr mkBoolLit(bool v, SrcPos p = {});
ExprPtr mkNil(SrcPos p = {});
ExprPtr mkVar(std::string name, SrcPos p = {});
ExprPtr mkIndex(std::string arr, ExprPtr idx, SrcPos p = {});
ExprPtr mkField(ExprPtr base, std::string field, SrcPos p = {});
ExprPtr mkUnary(UnOp op, ExprPtr a, SrcPos p = {});
ExprPtr mkBinary(BinOp op, ExprPtr a, ExprPtr b, SrcPos p = {});
ExprPtr mkSetLit(std::vector<ExprPtr> elems, SrcPos p = {});
ExprPtr mkSetRange(ExprPtr lo, ExprPtr hi, SrcPos p = {});
ExprPtr mkCall(std::string name, std::vector<ExprPtr> args, SrcPos p = {});

// ---------------------------------------------------------------------------
// Assignment targets: a base variable plus an optional access chain,
// e.g. x, a[i], t.l, n[j].p.
// ---------------------------------------------------------------------------

struct LvAccess {
  bool isField = false;
  std::string field;  // when isField
  ExprPtr index;      // when !isField
};

struct LValue {
  SrcPos pos;
  std::string var;
  std::vector<LvAccess> path;  // empty -> plain variable
};

// ---------------------------------------------------------------------------
// Statements.
// ---------------------------------------------------------------------------

struct Stat;
using StatPtr = std::shared_ptr<const Stat>;

struct Stat {
  enum class Kind {
    Skip,
    Seq,          // s1 ; s2
    Choice,       // s1 [] s2
    Assign,       // targets := exprs   (simultaneous when more than one)
    RangeAssign,  // var := [e1 : e2]
    SelectIn,     // var := select in e1
    If,           // if e1 then s1 [else s2] fi
    While,        // while e1 s1 elihw
    ForUp,        // for var = e1 to e2 s1 rof
    ForDown,      // for var = e1 downto e2 s1 rof
    ForIn,        // for var in e1 s1 rof
    ProcCall,     // callee(exprs)
    AssignCall,   // var := callee(exprs)
    New,          // var := new callee(field: expr, ...)
    Return        // return [e1]
  };

  Kind kind;
  SrcPos pos;
  StatPtr s1, s2;
  ExprPtr e1, e2;
  std::string var;
  std::string callee;
  std::vector<LValue> targets;
  std::vector<ExprPtr> exprs;
  std::vector<std::pair<std::string, ExprPtr>> fieldInits;
};

StatPtr mkSkip(SrcPos p = {});
StatPtr mkSeq(StatPtr a, StatPtr b, SrcPos p = {});
StatPtr mkChoice(StatPtr a, StatPtr b, SrcPos p = {});
StatPtr mkAssign(std::vector<LValue> targets, std::vector<ExprPtr> rhs, SrcPos p = {});
StatPtr mkAssignVar(std::string var, ExprPtr rhs, SrcPos p = {});
StatPtr mkRangeAssign(std::string var, ExprPtr lo, ExprPtr hi, SrcPos p = {});
StatPtr mkSelectIn(std::string var, ExprPtr set, SrcPos p = {});
StatPtr mkIf(ExprPtr cond, StatPtr thenS, StatPtr elseS = nullptr, SrcPos p = {});
StatPtr mkWhile(ExprPtr cond, StatPtr body, SrcPos p = {});
StatPtr mkForUp(std::string var, ExprPtr lo, ExprPtr hi, StatPtr body, SrcPos p = {});
StatPtr mkForDown(std::string var, ExprPtr hi, ExprPtr lo, StatPtr body, SrcPos p = {});
StatPtr mkForIn(std::string var, ExprPtr set, StatPtr body, SrcPos p = {});
StatPtr mkProcCall(std::string callee, std::vector<ExprPtr> actuals, SrcPos p = {});
StatPtr mkAssignCall(std::string var, std::string callee, std::vector<ExprPtr> actuals, SrcPos p = {});
StatPtr mkNew(std::string var, std::string recordType,
              std::vector<std::pair<std::string, ExprPtr>> inits, SrcPos p = {});
StatPtr mkReturn(ExprPtr e = nullptr, SrcPos p = {});

// ---------------------------------------------------------------------------
// Declarations.
// ---------------------------------------------------------------------------

// A domain describes both the static type of a name and the finite range its
// values are drawn from. Shared by universe files, record fields and
// procedure formals/locals.
struct Domain {
  enum class Kind { Int, Bool, Set, Ref, Array };
  Kind kind = Kind::Int;
  long long lo = 0, hi = 0;              // Int and Set ranges
  std::string record;                    // Ref
  int len = 0;                           // Array length
  std::shared_ptr<Domain> elem;          // Array element (Int or Ref)
  bool prealloc = false;                 // Ref / Array-of-Ref enumeration mode
  bool aux = false;                      // not enumerated; starts at default value

  static Domain intRange(long long lo, long long hi);
  static Domain boolean();
  static Domain setRange(long long lo, long long hi);
  static Domain ref(std::string record, bool prealloc = false);
  static Domain array(int len, Domain elem, bool prealloc = false);
};

bool sameType(const Domain& a, const Domain& b);  // kind/record/len compatible, ranges ignored

struct FieldDecl {
  std::string name;
  Domain type;
};

struct RecordDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  SrcPos pos;
  const FieldDecl* field(const std::string& n) const;
  int fieldIndex(const std::string& n) const;  // -1 when absent
};

struct VarDecl {
  std::string name;
  Domain type;
};

struct RetType {
  enum class Kind { Void, Int, Bool, Set, Ref };
  Kind kind = Kind::Void;
  std::string record;  // Ref
};

struct ProcDef {
  std::string name;
  RetType ret;
  std::vector<VarDecl> formals;
  std::vector<VarDecl> locals;  // frame variables of recursive procedures
  StatPtr body;
  bool recursive = false;  // participates in a call cycle (derived)
  SrcPos pos;
};

struct Program {
  std::vector<RecordDecl> records;
  std::vector<ProcDef> procs;
  StatPtr main;

  const RecordDecl* record(const std::string& n) const;
  const ProcDef* proc(const std::string& n) const;
};

// Structural equality, source positions ignored.
bool equal(const Expr& a, const Expr& b);
bool equal(const Stat& a, const Stat& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const StatPtr& a, const StatPtr& b);

// Statement tree navigation for rewrite/congruence paths. Children are:
// Seq/Choice 0,1; If 0=then (1=else when present); While/ForUp/ForDown/ForIn 0=body.
int childCount(const Stat& s);
StatPtr child(const Stat& s, int i);
StatPtr withChild(const Stat& s, int i, StatPtr c);

// Subterm access by path of child indices; nullptr when the path is invalid.
StatPtr subterm(StatPtr root, const std::vector<int>& path);
StatPtr replaceSubterm(StatPtr root, const std::vector<int>& path, StatPtr repl);

// Flattened view of nested Seq nodes, left to right.
std::vector<StatPtr> flattenSeq(StatPtr s);
StatPtr seqOf(const std::vector<StatPtr>& parts, SrcPos p = {});  // right-assoc; Skip when empty

// Derives ProcDef::recursive for every procedure (call-graph cycles).
void markRecursion(Program& p);

// The defining desugaring of counted loops:
//   for v = lo to hi S rof      ==  v := lo; while v <= hi  { S; v := v + 1 }
//   for v = hi downto lo S rof  ==  v := hi; while lo <= v  { S; v := v - 1 }
// The interpreter executes for-loops exactly as this expansion.
StatPtr desugarForLoop(const Stat& f);

}  // namespace optri
