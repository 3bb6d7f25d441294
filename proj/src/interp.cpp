#include "interp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "diag.hpp"
#include "inliner.hpp"
#include "intrinsics.hpp"

namespace optri {

namespace {

struct ExecFault {
  std::string kind;
  SrcPos pos;
};

[[noreturn]] void fault(const std::string& kind, SrcPos pos) { throw ExecFault{kind, pos}; }

std::string faultKey(const ExecFault& f) {
  std::ostringstream os;
  os << f.kind << '@' << f.pos.line << ':' << f.pos.col;
  return os.str();
}

struct Frame {
  const ProcDef* def = nullptr;
  std::map<std::string, Value> vars;
};

// Expression evaluation over a state, optionally inside a frame. Throws
// ExecFault on nil dereference, bad indices and intrinsic failures.
class Evaluator {
 public:
  Evaluator(const ExecContext& cx, const State& st, const Frame* frame)
      : cx_(cx), st_(st), frame_(frame) {}

  const Value& readVar(const std::string& name, SrcPos pos) const {
    if (frame_) {
      auto it = frame_->vars.find(name);
      if (it != frame_->vars.end()) return it->second;
      fault("internal-unknown-variable", pos);
    }
    auto it = st_.store.find(name);
    if (it == st_.store.end()) fault("internal-unknown-variable", pos);
    return it->second;
  }

  const RecordDecl& recordDecl(const std::string& name, SrcPos pos) const {
    auto it = cx_.uni->records.find(name);
    if (it == cx_.uni->records.end()) fault("internal-unknown-record", pos);
    return it->second;
  }

  Value eval(const ExprPtr& e) const {
    switch (e->kind) {
      case Expr::Kind::IntLit:
        return Value::ofInt(e->intVal);
      case Expr::Kind::BoolLit:
        return Value::ofBool(e->boolVal);
      case Expr::Kind::NilLit:
        return Value::ofRef(kNil);
      case Expr::Kind::Var:
        return readVar(e->name, e->pos);
      case Expr::Kind::Index: {
        const Value& a = readVar(e->name, e->pos);
        if (a.kind != Value::Kind::Array) fault("internal-kind-mismatch", e->pos);
        Value idx = eval(e->a);
        if (idx.i < 0 || idx.i >= static_cast<long long>(a.arr.size()))
          fault("index-out-of-bounds", e->pos);
        return a.arr[static_cast<size_t>(idx.i)];
      }
      case Expr::Kind::Field: {
        Value base = eval(e->a);
        if (base.kind != Value::Kind::Ref) fault("internal-kind-mismatch", e->pos);
        if (base.loc < 0) fault("nil-dereference", e->pos);
        const RecordInst& inst = st_.heap[static_cast<size_t>(base.loc)];
        const RecordDecl& rd = recordDecl(inst.type, e->pos);
        int fi = rd.fieldIndex(e->name);
        if (fi < 0) fault("internal-unknown-field", e->pos);
        return inst.fields[static_cast<size_t>(fi)];
      }
      case Expr::Kind::Unary: {
        Value a = eval(e->a);
        if (e->unop == UnOp::Neg) return Value::ofInt(-a.i);
        return Value::ofBool(!a.b);
      }
      case Expr::Kind::Binary:
        return evalBinary(e);
      case Expr::Kind::SetLit: {
        std::vector<long long> elems;
        for (auto& el : e->args) elems.push_back(eval(el).i);
        return Value::ofSet(std::move(elems));
      }
      case Expr::Kind::SetRange: {
        long long lo = eval(e->a).i;
        long long hi = eval(e->b).i;
        std::vector<long long> elems;
        for (long long v = lo; v <= hi; ++v) elems.push_back(v);
        return Value::ofSet(std::move(elems));
      }
      case Expr::Kind::Call:
        return evalIntrinsic(e);
    }
    fault("internal-bad-expression", e->pos);
  }

 private:
  const ExecContext& cx_;
  const State& st_;
  const Frame* frame_;

  Value evalBinary(const ExprPtr& e) const {
    Value a = eval(e->a);
    Value b = eval(e->b);
    auto asSet = [](const Value& v) -> std::vector<long long> {
      if (v.kind == Value::Kind::Set) return v.set;
      return {v.i};
    };
    switch (e->binop) {
      case BinOp::Add: {
        if (a.kind == Value::Kind::Set || b.kind == Value::Kind::Set) {
          std::vector<long long> u = asSet(a);
          for (long long x : asSet(b)) u.push_back(x);
          return Value::ofSet(std::move(u));
        }
        return Value::ofInt(a.i + b.i);
      }
      case BinOp::Sub: {
        if (a.kind == Value::Kind::Set) {
          std::vector<long long> rem = asSet(b), keep;
          for (long long x : a.set)
            if (!std::binary_search(rem.begin(), rem.end(), x)) keep.push_back(x);
          return Value::ofSet(std::move(keep));
        }
        return Value::ofInt(a.i - b.i);
      }
      case BinOp::Mul:
        return Value::ofInt(a.i * b.i);
      case BinOp::Min:
        return Value::ofInt(std::min(a.i, b.i));
      case BinOp::Lt:
        return Value::ofBool(a.i < b.i);
      case BinOp::Eq:
        return Value::ofBool(a == b);
      case BinOp::And:
        return Value::ofBool(a.b && b.b);
      case BinOp::Or:
        return Value::ofBool(a.b || b.b);
      case BinOp::In:
        return Value::ofBool(std::binary_search(b.set.begin(), b.set.end(), a.i));
    }
    fault("internal-bad-expression", e->pos);
  }

  Value evalIntrinsic(const ExprPtr& e) const {
    Intrinsic in;
    if (!lookupIntrinsic(e->name, in)) fault("internal-unknown-intrinsic", e->pos);
    Value arr = eval(e->args[0]);
    if (arr.kind != Value::Kind::Array) fault("internal-kind-mismatch", e->pos);
    long long n = static_cast<long long>(arr.arr.size());
    if (in == Intrinsic::FindMin) {
      Value excl = eval(e->args[1]);
      long long best = -1;
      for (long long i = 0; i < n; ++i) {
        if (std::binary_search(excl.set.begin(), excl.set.end(), i)) continue;
        if (best < 0 ||
            arr.arr[static_cast<size_t>(i)].i < arr.arr[static_cast<size_t>(best)].i)
          best = i;
      }
      if (best < 0) fault("index-out-of-bounds", e->pos);  // all indices excluded
      return Value::ofInt(best);
    }
    Value rank = eval(e->args[1]);
    if (rank.i < 0 || rank.i >= n) fault("index-out-of-bounds", e->pos);
    std::vector<long long> order(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](long long x, long long y) {
      return arr.arr[static_cast<size_t>(x)].i < arr.arr[static_cast<size_t>(y)].i;
    });
    return Value::ofInt(order[static_cast<size_t>(rank.i)]);
  }
};

struct Task {
  enum class K { Run, WhileTest, ForIter, FramePop };
  K k = K::Run;
  const Stat* stat = nullptr;    // Run; WhileTest: the while node
  std::string var;               // ForIter variable
  std::vector<long long> elems;  // ForIter snapshot
  size_t idx = 0;                // ForIter position
  const Stat* body = nullptr;    // ForIter body
  std::string target;            // FramePop: assign-call target
  bool wantValue = false;        // FramePop
  SrcPos pos;
};

struct Config {
  std::vector<Task> stack;  // back() runs next
  State st;
  std::vector<Frame> frames;
  long long fuel = 0;
  bool returned = false;  // a Return reached the pending FramePop
  Value retValue;
};

// Explores every nondeterministic resolution of one statement from one state.
// One Machine instance serves one statement tree (caches key on node
// addresses kept alive by the caller).
class Machine {
 public:
  Machine(const ExecContext& cx, const ExecLimits& lim) : cx_(cx), lim_(lim) {}

  RunOutcomes explore(const StatPtr& stat, const State& init) {
    RunOutcomes out;
    roots_.push_back(stat);
    std::vector<Config> work;
    Config c0;
    c0.stack.push_back(Task{.k = Task::K::Run, .stat = stat.get()});
    c0.st = init;
    c0.fuel = lim_.fuel;
    work.push_back(std::move(c0));

    while (!work.empty()) {
      Config c = std::move(work.back());
      work.pop_back();
      try {
        stepToCompletion(std::move(c), work, out);
      } catch (const ExecFault& f) {
        out.errors.insert(faultKey(f));
      }
    }
    return out;
  }

 private:
  const ExecContext& cx_;
  const ExecLimits& lim_;
  std::vector<StatPtr> roots_;  // keeps node addresses stable for the caches
  std::map<const Stat*, StatPtr> desugar_;
  std::map<const Stat*, StatPtr> inlined_;

  bool spend(Config& c, RunOutcomes& out) {
    if (c.fuel <= 0) {
      out.fuelExhausted = true;
      out.maxFuelUsed = lim_.fuel;
      return false;
    }
    --c.fuel;
    return true;
  }

  Evaluator evaluator(const Config& c) const {
    return Evaluator(cx_, c.st, c.frames.empty() ? nullptr : &c.frames.back());
  }

  const Domain* varDomain(const Config& c, const std::string& name) const {
    if (!c.frames.empty()) {
      const ProcDef* d = c.frames.back().def;
      for (auto& f : d->formals)
        if (f.name == name) return &f.type;
      for (auto& l : d->locals)
        if (l.name == name) return &l.type;
      return nullptr;
    }
    return cx_.uni->find(name);
  }

  void checkDomain(const Value& v, const Domain& d, SrcPos pos) const {
    switch (d.kind) {
      case Domain::Kind::Int:
        if (v.kind != Value::Kind::Int) fault("internal-kind-mismatch", pos);
        if (v.i < d.lo || v.i > d.hi) fault("out-of-domain-value", pos);
        return;
      case Domain::Kind::Bool:
        if (v.kind != Value::Kind::Bool) fault("internal-kind-mismatch", pos);
        return;
      case Domain::Kind::Set:
        if (v.kind != Value::Kind::Set) fault("internal-kind-mismatch", pos);
        for (long long e : v.set)
          if (e < d.lo || e > d.hi) fault("out-of-domain-value", pos);
        return;
      case Domain::Kind::Ref:
        if (v.kind != Value::Kind::Ref) fault("internal-kind-mismatch", pos);
        return;
      case Domain::Kind::Array:
        if (v.kind != Value::Kind::Array) fault("internal-kind-mismatch", pos);
        if (static_cast<int>(v.arr.size()) != d.len) fault("internal-kind-mismatch", pos);
        for (auto& e : v.arr) checkDomain(e, *d.elem, pos);
        return;
    }
  }

  void writeVar(Config& c, const std::string& name, const Value& v, SrcPos pos) const {
    const Domain* d = varDomain(c, name);
    if (!d) fault("internal-unknown-variable", pos);
    checkDomain(v, *d, pos);
    if (!c.frames.empty())
      c.frames.back().vars[name] = v;
    else
      c.st.store[name] = v;
  }

  void assignLValue(Config& c, const LValue& lv, const Value& v) const {
    if (lv.path.empty()) {
      writeVar(c, lv.var, v, lv.pos);
      return;
    }
    const Domain* d = varDomain(c, lv.var);
    if (!d) fault("internal-unknown-variable", lv.pos);
    Evaluator ev = evaluator(c);

    Value copy = ev.readVar(lv.var, lv.pos);
    Value* cursor = &copy;
    bool inHeap = false;
    Loc heapLoc = kNil;
    int heapField = -1;
    const Domain* curDom = d;
    Domain scratch;

    for (auto& acc : lv.path) {
      Value& cell = inHeap
                        ? c.st.heap[static_cast<size_t>(heapLoc)].fields[static_cast<size_t>(heapField)]
                        : *cursor;
      if (!acc.isField) {
        if (inHeap || cell.kind != Value::Kind::Array) fault("internal-kind-mismatch", lv.pos);
        Value idx = ev.eval(acc.index);
        if (idx.i < 0 || idx.i >= static_cast<long long>(cell.arr.size()))
          fault("index-out-of-bounds", lv.pos);
        cursor = &cell.arr[static_cast<size_t>(idx.i)];
        curDom = curDom->elem.get();
      } else {
        if (cell.kind != Value::Kind::Ref) fault("internal-kind-mismatch", lv.pos);
        if (cell.loc < 0) fault("nil-dereference", lv.pos);
        const RecordInst& inst = c.st.heap[static_cast<size_t>(cell.loc)];
        const RecordDecl& rd = ev.recordDecl(inst.type, lv.pos);
        int fi = rd.fieldIndex(acc.field);
        if (fi < 0) fault("internal-unknown-field", lv.pos);
        heapLoc = cell.loc;
        heapField = fi;
        inHeap = true;
        scratch = rd.fields[static_cast<size_t>(fi)].type;
        curDom = &scratch;
      }
    }

    checkDomain(v, *curDom, lv.pos);
    if (inHeap) {
      c.st.heap[static_cast<size_t>(heapLoc)].fields[static_cast<size_t>(heapField)] = v;
    } else {
      *cursor = v;
      writeVar(c, lv.var, copy, lv.pos);
    }
  }

  StatPtr inlinedFor(const Stat* call) {
    auto it = inlined_.find(call);
    if (it != inlined_.end()) return it->second;
    StatPtr callPtr(roots_.front(), call);
    StatPtr exp = inlineCall(callPtr, *cx_.prog);
    inlined_[call] = exp;
    roots_.push_back(exp);
    return exp;
  }

  StatPtr desugarFor(const Stat* f) {
    auto it = desugar_.find(f);
    if (it != desugar_.end()) return it->second;
    StatPtr body = desugarForLoop(*f);
    desugar_[f] = body;
    roots_.push_back(body);
    return body;
  }

  void finish(Config& c, RunOutcomes& out) {
    out.maxFuelUsed = std::max(out.maxFuelUsed, lim_.fuel - c.fuel);
    out.finals.insert(canonicalizeState(c.st));
  }

  void stepToCompletion(Config c, std::vector<Config>& work, RunOutcomes& out) {
    for (;;) {
      if (c.stack.empty()) {
        finish(c, out);
        return;
      }
      Task t = std::move(c.stack.back());
      c.stack.pop_back();

      switch (t.k) {
        case Task::K::Run: {
          const Stat* s = t.stat;
          switch (s->kind) {
            case Stat::Kind::Skip:
              if (!spend(c, out)) return;
              break;
            case Stat::Kind::Seq:
              c.stack.push_back(Task{.k = Task::K::Run, .stat = s->s2.get()});
              c.stack.push_back(Task{.k = Task::K::Run, .stat = s->s1.get()});
              break;
            case Stat::Kind::Choice: {
              Config alt = c;
              alt.stack.push_back(Task{.k = Task::K::Run, .stat = s->s2.get()});
              work.push_back(std::move(alt));
              c.stack.push_back(Task{.k = Task::K::Run, .stat = s->s1.get()});
              break;
            }
            case Stat::Kind::Assign: {
              if (!spend(c, out)) return;
              Evaluator ev = evaluator(c);
              std::vector<Value> vals;
              vals.reserve(s->exprs.size());
              for (auto& e : s->exprs) vals.push_back(ev.eval(e));
              for (size_t i = 0; i < s->targets.size(); ++i)
                assignLValue(c, s->targets[i], vals[i]);
              break;
            }
            case Stat::Kind::RangeAssign: {
              if (!spend(c, out)) return;
              Evaluator ev = evaluator(c);
              long long lo = ev.eval(s->e1).i;
              long long hi = ev.eval(s->e2).i;
              if (lo > hi) return;  // empty choice: the path vanishes
              for (long long v = hi; v > lo; --v) {
                Config alt = c;
                try {
                  writeVar(alt, s->var, Value::ofInt(v), s->pos);
                  work.push_back(std::move(alt));
                } catch (const ExecFault& f) {
                  out.errors.insert(faultKey(f));
                }
              }
              writeVar(c, s->var, Value::ofInt(lo), s->pos);
              break;
            }
            case Stat::Kind::SelectIn: {
              if (!spend(c, out)) return;
              Value set = evaluator(c).eval(s->e1);
              if (set.set.empty()) return;  // empty choice
              for (size_t i = set.set.size(); i-- > 1;) {
                Config alt = c;
                try {
                  writeVar(alt, s->var, Value::ofInt(set.set[i]), s->pos);
                  work.push_back(std::move(alt));
                } catch (const ExecFault& f) {
                  out.errors.insert(faultKey(f));
                }
              }
              writeVar(c, s->var, Value::ofInt(set.set[0]), s->pos);
              break;
            }
            case Stat::Kind::If: {
              Value cond = evaluator(c).eval(s->e1);
              if (cond.b)
                c.stack.push_back(Task{.k = Task::K::Run, .stat = s->s1.get()});
              else if (s->s2)
                c.stack.push_back(Task{.k = Task::K::Run, .stat = s->s2.get()});
              break;
            }
            case Stat::Kind::While: {
              Task w;
              w.k = Task::K::WhileTest;
              w.stat = s;
              c.stack.push_back(std::move(w));
              break;
            }
            case Stat::Kind::ForUp:
            case Stat::Kind::ForDown:
              c.stack.push_back(Task{.k = Task::K::Run, .stat = desugarFor(s).get()});
              break;
            case Stat::Kind::ForIn: {
              if (!spend(c, out)) return;
              Value set = evaluator(c).eval(s->e1);
              Task it;
              it.k = Task::K::ForIter;
              it.var = s->var;
              it.elems = set.set;
              it.idx = 0;
              it.body = s->s1.get();
              it.pos = s->pos;
              c.stack.push_back(std::move(it));
              break;
            }
            case Stat::Kind::ProcCall:
            case Stat::Kind::AssignCall: {
              const ProcDef* callee = cx_.prog->proc(s->callee);
              if (!callee) fault("internal-unknown-procedure", s->pos);
              if (!callee->recursive) {
                c.stack.push_back(Task{.k = Task::K::Run, .stat = inlinedFor(s).get()});
                break;
              }
              if (static_cast<int>(c.frames.size()) >= lim_.depthBound) {
                out.fuelExhausted = true;
                out.maxFuelUsed = std::max(out.maxFuelUsed, lim_.fuel - c.fuel);
                return;
              }
              if (!spend(c, out)) return;  // the formal binding
              Evaluator ev = evaluator(c);
              std::vector<Value> actuals;
              actuals.reserve(s->exprs.size());
              for (auto& e : s->exprs) actuals.push_back(ev.eval(e));
              Frame fr;
              fr.def = callee;
              for (size_t i = 0; i < callee->formals.size(); ++i) {
                checkDomain(actuals[i], callee->formals[i].type, s->pos);
                fr.vars[callee->formals[i].name] = actuals[i];
              }
              for (auto& l : callee->locals) fr.vars[l.name] = defaultValue(l.type);
              Task popT;
              popT.k = Task::K::FramePop;
              popT.target = s->kind == Stat::Kind::AssignCall ? s->var : "";
              popT.wantValue =
                  callee->ret.kind != RetType::Kind::Void && s->kind == Stat::Kind::AssignCall;
              popT.pos = s->pos;
              c.stack.push_back(std::move(popT));
              c.frames.push_back(std::move(fr));
              c.stack.push_back(Task{.k = Task::K::Run, .stat = callee->body.get()});
              break;
            }
            case Stat::Kind::New: {
              if (!spend(c, out)) return;
              Evaluator ev = evaluator(c);
              const RecordDecl& rd = ev.recordDecl(s->callee, s->pos);
              if (static_cast<long long>(c.st.heap.size()) >= cx_.uni->heapBudget)
                fault("heap-budget-exceeded", s->pos);
              RecordInst inst;
              inst.type = rd.name;
              for (auto& f : rd.fields) inst.fields.push_back(defaultValue(f.type));
              for (auto& [fname, fe] : s->fieldInits) {
                int fi = rd.fieldIndex(fname);
                if (fi < 0) fault("internal-unknown-field", s->pos);
                Value v = ev.eval(fe);
                checkDomain(v, rd.fields[static_cast<size_t>(fi)].type, s->pos);
                inst.fields[static_cast<size_t>(fi)] = v;
              }
              c.st.heap.push_back(std::move(inst));
              writeVar(c, s->var, Value::ofRef(static_cast<Loc>(c.st.heap.size() - 1)), s->pos);
              break;
            }
            case Stat::Kind::Return: {
              if (!spend(c, out)) return;
              Value v;
              if (s->e1) v = evaluator(c).eval(s->e1);
              while (!c.stack.empty() && c.stack.back().k != Task::K::FramePop)
                c.stack.pop_back();
              if (c.stack.empty()) fault("internal-return-outside-call", s->pos);
              c.returned = true;
              c.retValue = v;
              break;
            }
          }
          break;
        }

        case Task::K::WhileTest: {
          if (!spend(c, out)) return;
          Value cond = evaluator(c).eval(t.stat->e1);
          if (cond.b) {
            const Stat* body = t.stat->s1.get();
            c.stack.push_back(std::move(t));  // retest after the body
            c.stack.push_back(Task{.k = Task::K::Run, .stat = body});
          }
          break;
        }

        case Task::K::ForIter: {
          if (t.idx >= t.elems.size()) break;
          if (!spend(c, out)) return;
          writeVar(c, t.var, Value::ofInt(t.elems[t.idx]), t.pos);
          const Stat* body = t.body;
          Task next = std::move(t);
          next.idx++;
          c.stack.push_back(std::move(next));
          c.stack.push_back(Task{.k = Task::K::Run, .stat = body});
          break;
        }

        case Task::K::FramePop: {
          bool returned = c.returned;
          Value rv = c.retValue;
          c.returned = false;
          c.retValue = Value();
          c.frames.pop_back();
          if (t.wantValue) {
            if (!returned) fault("missing-return", t.pos);
            writeVar(c, t.target, rv, t.pos);
          }
          break;
        }
      }
    }
  }
};

struct Accum {
  std::set<std::pair<State, State>> pairs;
  std::set<State> finals;
  bool anyRuntimeError = false;
  bool anyFuelExhausted = false;
  long long maxFuelUsed = 0;
  std::set<std::string> errorKinds;
};

void exploreRange(const ExecContext& cx, const StatPtr& stat, const ExecLimits& lim,
                  const std::vector<State>& inits, size_t from, size_t to, bool wantPairs,
                  Accum& acc) {
  Machine m(cx, lim);
  for (size_t i = from; i < to; ++i) {
    RunOutcomes r = m.explore(stat, inits[i]);
    if (wantPairs) {
      State ci = canonicalizeState(inits[i]);
      for (auto& f : r.finals) acc.pairs.emplace(ci, f);
    }
    acc.finals.insert(r.finals.begin(), r.finals.end());
    if (r.anyError()) acc.anyRuntimeError = true;
    if (r.fuelExhausted) acc.anyFuelExhausted = true;
    acc.maxFuelUsed = std::max(acc.maxFuelUsed, r.maxFuelUsed);
    acc.errorKinds.insert(r.errors.begin(), r.errors.end());
  }
}

Accum exploreAll(const ExecContext& cx, const StatPtr& stat, const ExecLimits& lim, int jobs,
                 bool wantPairs, long long& statesEnumerated) {
  std::vector<State> inits = enumerateStates(*cx.uni);
  statesEnumerated = static_cast<long long>(inits.size());
  if (jobs < 1) jobs = 1;
  if (static_cast<size_t>(jobs) > inits.size() && !inits.empty())
    jobs = static_cast<int>(inits.size());

  if (jobs == 1 || inits.size() < 2) {
    Accum acc;
    exploreRange(cx, stat, lim, inits, 0, inits.size(), wantPairs, acc);
    return acc;
  }

  std::vector<Accum> parts(static_cast<size_t>(jobs));
  std::vector<std::thread> threads;
  size_t chunk = (inits.size() + static_cast<size_t>(jobs) - 1) / static_cast<size_t>(jobs);
  for (int j = 0; j < jobs; ++j) {
    size_t from = static_cast<size_t>(j) * chunk;
    size_t to = std::min(inits.size(), from + chunk);
    if (from >= to) break;
    threads.emplace_back([&cx, &stat, &lim, &inits, from, to, wantPairs, &parts, j]() {
      exploreRange(cx, stat, lim, inits, from, to, wantPairs, parts[static_cast<size_t>(j)]);
    });
  }
  for (auto& th : threads) th.join();

  Accum acc;
  for (auto& p : parts) {
    acc.pairs.insert(p.pairs.begin(), p.pairs.end());
    acc.finals.insert(p.finals.begin(), p.finals.end());
    acc.anyRuntimeError |= p.anyRuntimeError;
    acc.anyFuelExhausted |= p.anyFuelExhausted;
    acc.maxFuelUsed = std::max(acc.maxFuelUsed, p.maxFuelUsed);
    acc.errorKinds.insert(p.errorKinds.begin(), p.errorKinds.end());
  }
  return acc;
}

}  // namespace

RunOutcomes run(const ExecContext& cx, const StatPtr& stat, const State& init,
                const ExecLimits& lim) {
  Machine m(cx, lim);
  return m.explore(stat, init);
}

BehaviorSet behaviors(const ExecContext& cx, const StatPtr& stat, const ExecLimits& lim,
                      int jobs) {
  BehaviorSet b;
  Accum acc = exploreAll(cx, stat, lim, jobs, true, b.statesEnumerated);
  b.pairs = std::move(acc.pairs);
  b.anyRuntimeError = acc.anyRuntimeError;
  b.anyFuelExhausted = acc.anyFuelExhausted;
  b.maxFuelUsed = acc.maxFuelUsed;
  b.errorKinds = std::move(acc.errorKinds);
  return b;
}

PostStates poststates(const ExecContext& cx, const StatPtr& stat, const ExecLimits& lim,
                      int jobs) {
  PostStates p;
  Accum acc = exploreAll(cx, stat, lim, jobs, false, p.statesEnumerated);
  p.states = std::move(acc.finals);
  p.anyRuntimeError = acc.anyRuntimeError;
  p.anyFuelExhausted = acc.anyFuelExhausted;
  p.maxFuelUsed = acc.maxFuelUsed;
  p.errorKinds = std::move(acc.errorKinds);
  return p;
}

bool evalBool(const ExecContext& cx, const ExprPtr& e, const State& st) {
  try {
    Evaluator ev(cx, st, nullptr);
    Value v = ev.eval(e);
    if (v.kind != Value::Kind::Bool) throw EvalFailure{"internal-kind-mismatch", e->pos};
    return v.b;
  } catch (const ExecFault& f) {
    throw EvalFailure{f.kind, f.pos};
  }
}

}  // namespace optri
