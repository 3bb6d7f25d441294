#include "kernel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "diag.hpp"
#include "inliner.hpp"
#include "parser.hpp"
#include "printer.hpp"
#include "rewrite.hpp"
#include "typecheck.hpp"

namespace optri {

using nlohmann::json;

namespace {

struct StepFailure {
  std::string message;
};

[[noreturn]] void stepFail(const std::string& msg) { throw StepFailure{msg}; }

// Inductive-hypothesis context of an EquivRecursive sub-derivation: the goal
// composition with its target variable and argument expressions treated as
// substitutable slots.
struct IhContext {
  Judgment goal;                    // the composition being established
  std::string preProc, progProc, postProc;
  std::vector<ExprPtr> goalSlots;   // [target-var, pre-args..., prog-args..., post-args...]
  std::vector<int> slotClass;       // structural-equality classes over goalSlots
  int targetClass = 0;              // class of the target variable
};

}  // namespace

Script loadScript(const std::string& jsonText) {
  json j;
  try {
    j = json::parse(jsonText);
  } catch (const json::exception& e) {
    throw ScriptError(std::string("bad proof script JSON: ") + e.what());
  }
  if (!j.is_object()) throw ScriptError("proof script must be a JSON object");
  Script s;
  try {
    s.programFile = j.at("program").get<std::string>();
    s.universeFile = j.at("universe").get<std::string>();
    s.fuel = j.value("fuel", 10000LL);
    s.goal = j.at("goal").get<std::string>();
    if (!j.contains("steps") || !j.at("steps").is_array())
      throw ScriptError("proof script needs a \"steps\" array");
    std::set<std::string> ids;
    for (auto& js : j.at("steps")) {
      ProofStepSpec st;
      st.id = js.at("id").get<std::string>();
      st.rule = js.at("rule").get<std::string>();
      if (js.contains("premises"))
        for (auto& p : js.at("premises")) st.premises.push_back(p.get<std::string>());
      if (js.contains("payload")) st.payload = js.at("payload");
      if (js.contains("conclusion")) st.conclusion = js.at("conclusion");
      if (!ids.insert(st.id).second) throw ScriptError("duplicate step id '" + st.id + "'");
      s.steps.push_back(std::move(st));
    }
  } catch (const json::exception& e) {
    throw ScriptError(std::string("bad proof script field: ") + e.what());
  }
  return s;
}

namespace {

class DerivationChecker {
 public:
  DerivationChecker(const Script& script, const Program& prog, const Universe& uni, int jobs)
      : script_(script),
        prog_(prog),
        uni_(uni),
        jobs_(jobs),
        lim_{script.fuel, 64},
        checker_(ExecContext{&prog, &uni}, lim_, jobs) {}

  DerivationReport run() {
    DerivationReport rep;
    bool failed = false;
    for (auto& spec : script_.steps) {
      StepReport sr;
      sr.id = spec.id;
      sr.rule = spec.rule;
      if (failed) {
        sr.status = "skipped";
        rep.steps.push_back(std::move(sr));
        continue;
      }
      try {
        Judgment concluded = verifyStep(spec, verified_, nullptr);
        checkDeclaredConclusion(spec, concluded);
        verified_.emplace(spec.id, concluded);
        sr.status = "ok";
        sr.details = describe(concluded);
      } catch (const StepFailure& f) {
        sr.status = "failed";
        sr.details = f.message;
        rep.failedStep = spec.id;
        failed = true;
      }
      rep.steps.push_back(std::move(sr));
    }

    rep.statesEnumerated = statesEnumerated_;
    rep.maxFuelUsed = maxFuelUsed_;
    rep.semanticChecks = semanticChecks_;
    rep.axiomSteps = axiomSteps_;

    if (failed) {
      rep.status = "FAILED";
      return rep;
    }
    auto it = verified_.find(script_.goal);
    if (it == verified_.end()) {
      rep.status = "FAILED";
      rep.failedStep = script_.goal;
      StepReport sr;
      sr.id = script_.goal;
      sr.status = "failed";
      sr.details = "goal step not present";
      rep.steps.push_back(std::move(sr));
      return rep;
    }
    rep.goalText = describe(it->second);
    rep.status = axiomSteps_.empty() ? "PROVED" : "PROVED-WITH-AXIOMS";
    return rep;
  }

 private:
  const Script& script_;
  const Program& prog_;
  const Universe& uni_;
  int jobs_;
  ExecLimits lim_;
  SemanticChecker checker_;
  std::map<std::string, Judgment> verified_;
  std::vector<std::string> axiomSteps_;
  long long statesEnumerated_ = 0;
  long long maxFuelUsed_ = 0;
  long long semanticChecks_ = 0;

  // -- helpers --------------------------------------------------------------

  StatPtr parseProg(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string())
      stepFail(std::string("missing program field \"") + field + "\"");
    std::string src = j.at(field).get<std::string>();
    try {
      StatPtr s = parseStat(src);
      typecheckStat(s, prog_, uni_);
      return s;
    } catch (const std::exception& e) {
      stepFail(std::string("in field \"") + field + "\": " + e.what());
    }
  }

  ExprPtr parseCond(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string())
      stepFail(std::string("missing expression field \"") + field + "\"");
    try {
      ExprPtr e = parseExpr(j.at(field).get<std::string>());
      typecheckBoolExpr(e, prog_, uni_);
      return e;
    } catch (const std::exception& e) {
      stepFail(std::string("in field \"") + field + "\": " + e.what());
    }
  }

  Judgment parseJudgment(const json& j) {
    if (!j.is_object() || !j.contains("kind")) stepFail("judgment must have a \"kind\"");
    std::string k = j.at("kind").get<std::string>();
    if (k == "triple")
      return Judgment::triple(parseProg(j, "pre"), parseProg(j, "prog"), parseProg(j, "post"));
    if (k == "ord") return Judgment::ord(parseProg(j, "left"), parseProg(j, "right"));
    if (k == "equiv") return Judgment::equiv(parseProg(j, "left"), parseProg(j, "right"));
    if (k == "conj")
      return Judgment::conj(parseProg(j, "left"), parseProg(j, "base"), parseCond(j, "cond"));
    stepFail("unknown judgment kind '" + k + "'");
  }

  std::string describe(const Judgment& j) {
    auto flat = [](const StatPtr& s) {
      std::string t = printStat(s);
      for (auto& ch : t)
        if (ch == '\n') ch = ' ';
      return t;
    };
    switch (j.kind) {
      case Judgment::Kind::Triple:
        return "{ " + flat(j.a) + " } " + flat(j.b) + " { " + flat(j.c) + " }";
      case Judgment::Kind::Ord:
        return flat(j.a) + "  [=  " + flat(j.b);
      case Judgment::Kind::Equiv:
        return flat(j.a) + "  ==  " + flat(j.b);
      case Judgment::Kind::Conj:
        return flat(j.a) + "  =.  (" + flat(j.b) + ", " + printExpr(j.cond) + ")";
    }
    return "?";
  }

  void checkDeclaredConclusion(const ProofStepSpec& spec, const Judgment& concluded) {
    if (spec.conclusion.is_null()) return;
    Judgment declared = parseJudgment(spec.conclusion);
    if (!equalJudgment(declared, concluded))
      stepFail("declared conclusion differs from the rule's conclusion: rule gives " +
               describe(concluded));
  }

  const Judgment& premiseAt(const ProofStepSpec& spec, size_t i,
                            const std::map<std::string, Judgment>& ctx) {
    if (i >= spec.premises.size())
      stepFail("rule needs at least " + std::to_string(i + 1) + " premises");
    auto it = ctx.find(spec.premises[i]);
    if (it == ctx.end()) stepFail("premise '" + spec.premises[i] + "' is not a verified step");
    return it->second;
  }

  const Judgment& premiseKind(const ProofStepSpec& spec, size_t i,
                              const std::map<std::string, Judgment>& ctx, Judgment::Kind k) {
    const Judgment& j = premiseAt(spec, i, ctx);
    if (j.kind != k)
      stepFail("premise '" + spec.premises[i] + "' must be a " + judgmentKindName(k) +
               " judgment");
    return j;
  }

  void wantPremises(const ProofStepSpec& spec, size_t n) {
    if (spec.premises.size() != n)
      stepFail(spec.rule + " takes " + std::to_string(n) + " premises, got " +
               std::to_string(spec.premises.size()));
  }

  Verdict discharge(const Judgment& j) {
    Verdict v = checker_.check(j);
    semanticChecks_++;
    statesEnumerated_ += v.statesEnumerated;
    maxFuelUsed_ = std::max(maxFuelUsed_, v.maxFuelUsed);
    return v;
  }

  // -- rule dispatch ---------------------------------------------------------

  Judgment verifyStep(const ProofStepSpec& spec, const std::map<std::string, Judgment>& ctx,
                      const IhContext* ih) {
    const std::string& r = spec.rule;
    const json& pl = spec.payload;

    if (r == "SequenceAxiom") {
      StatPtr pre = parseProg(pl, "pre");
      StatPtr pr = parseProg(pl, "prog");
      return Judgment::triple(pre, pr, mkSeq(pre, pr));
    }
    if (r == "EmptyPreProgram") {
      StatPtr pr = parseProg(pl, "prog");
      return Judgment::triple(mkSkip(), pr, pr);
    }
    if (r == "EmptyProgram") {
      StatPtr pre = parseProg(pl, "pre");
      return Judgment::triple(pre, mkSkip(), pre);
    }
    if (r == "TradingLR") {
      wantPremises(spec, 1);
      const Judgment& t = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      if (t.b->kind != Stat::Kind::Seq)
        stepFail("TradingLR needs a sequential-composition program");
      return Judgment::triple(mkSeq(t.a, t.b->s1), t.b->s2, t.c);
    }
    if (r == "TradingRL") {
      wantPremises(spec, 1);
      const Judgment& t = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      if (t.a->kind != Stat::Kind::Seq)
        stepFail("TradingRL needs a sequential-composition pre-program");
      return Judgment::triple(t.a->s1, mkSeq(t.a->s2, t.b), t.c);
    }
    if (r == "Append") {
      wantPremises(spec, 1);
      const Judgment& t = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      StatPtr g = parseProg(pl, "gamma");
      return Judgment::triple(t.a, mkSeq(t.b, g), mkSeq(t.c, g));
    }
    if (r == "Substitution") {
      wantPremises(spec, 4);
      const Judgment& ea = premiseKind(spec, 0, ctx, Judgment::Kind::Equiv);
      const Judgment& ep = premiseKind(spec, 1, ctx, Judgment::Kind::Equiv);
      const Judgment& eb = premiseKind(spec, 2, ctx, Judgment::Kind::Equiv);
      const Judgment& t = premiseKind(spec, 3, ctx, Judgment::Kind::Triple);
      if (!equal(ea.a, t.a)) stepFail("first equivalence does not match the pre-program");
      if (!equal(ep.a, t.b)) stepFail("second equivalence does not match the program");
      if (!equal(eb.a, t.c)) stepFail("third equivalence does not match the post-program");
      return Judgment::triple(ea.b, ep.b, eb.b);
    }
    if (r == "PreStrengthen") {
      wantPremises(spec, 2);
      const Judgment& o = premiseKind(spec, 0, ctx, Judgment::Kind::Ord);
      const Judgment& t = premiseKind(spec, 1, ctx, Judgment::Kind::Triple);
      if (!equal(o.b, t.a)) stepFail("ordering's right side must be the triple's pre-program");
      return Judgment::triple(o.a, t.b, t.c);
    }
    if (r == "PostWeaken") {
      wantPremises(spec, 2);
      const Judgment& t = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      const Judgment& o = premiseKind(spec, 1, ctx, Judgment::Kind::Ord);
      if (!equal(o.a, t.c)) stepFail("ordering's left side must be the triple's post-program");
      return Judgment::triple(t.a, t.b, o.b);
    }
    if (r == "SeqComp") {
      wantPremises(spec, 2);
      const Judgment& t1 = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      const Judgment& t2 = premiseKind(spec, 1, ctx, Judgment::Kind::Triple);
      if (!equal(t1.c, t2.a))
        stepFail("intermediate post-program and pre-program differ");
      return Judgment::triple(t1.a, mkSeq(t1.b, t2.b), t2.c);
    }
    if (r == "While") {
      wantPremises(spec, 3);
      const Judgment& body = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      const Judgment& cIn = premiseKind(spec, 1, ctx, Judgment::Kind::Conj);
      const Judgment& cOut = premiseKind(spec, 2, ctx, Judgment::Kind::Conj);
      if (!equal(cIn.a, body.a))
        stepFail("entry conjunction's left program must be the body triple's pre-program");
      if (!equal(cIn.b, body.c))
        stepFail("entry conjunction's base must be the body triple's post-program (the invariant)");
      if (!equal(cOut.b, body.c)) stepFail("exit conjunction's base must be the invariant");
      ExprPtr negB = mkUnary(UnOp::Not, cIn.cond);
      if (!equal(cOut.cond, negB))
        stepFail("exit conjunction's condition must be the negated loop condition");
      return Judgment::triple(body.c, mkWhile(cIn.cond, body.b), cOut.a);
    }
    if (r == "WhileConsequence") {
      wantPremises(spec, 3);
      const Judgment& body = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      const Judgment& cIn = premiseKind(spec, 1, ctx, Judgment::Kind::Conj);
      const Judgment& cOut = premiseKind(spec, 2, ctx, Judgment::Kind::Conj);
      StatPtr inv = parseProg(pl, "invariant");
      // The body triple's post-program must be gamma; invariant for some gamma.
      auto post = flattenSeq(body.c);
      auto invParts = flattenSeq(inv);
      if (invParts.size() >= post.size())
        stepFail("the invariant must be a proper suffix of the body's post-program");
      for (size_t i = 0; i < invParts.size(); ++i) {
        if (!equal(post[post.size() - invParts.size() + i], invParts[i]))
          stepFail("the invariant is not a suffix of the body's post-program");
      }
      if (!equal(cIn.a, body.a)) stepFail("entry conjunction must restrict the body pre-program");
      if (!equal(cIn.b, inv)) stepFail("entry conjunction's base must be the invariant");
      if (!equal(cOut.b, inv)) stepFail("exit conjunction's base must be the invariant");
      ExprPtr negB = mkUnary(UnOp::Not, cIn.cond);
      if (!equal(cOut.cond, negB))
        stepFail("exit conjunction's condition must be the negated loop condition");
      return Judgment::triple(inv, mkWhile(cIn.cond, body.b), cOut.a);
    }
    if (r == "If") {
      wantPremises(spec, 4);
      const Judgment& tThen = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      const Judgment& tElse = premiseKind(spec, 1, ctx, Judgment::Kind::Triple);
      const Judgment& cThen = premiseKind(spec, 2, ctx, Judgment::Kind::Conj);
      const Judgment& cElse = premiseKind(spec, 3, ctx, Judgment::Kind::Conj);
      if (!equal(tThen.c, tElse.c)) stepFail("both branch triples must share the post-program");
      if (!equal(cThen.a, tThen.a)) stepFail("then conjunction must give the then pre-program");
      if (!equal(cElse.a, tElse.a)) stepFail("else conjunction must give the else pre-program");
      if (!equal(cThen.b, cElse.b)) stepFail("both conjunctions must share the base pre-program");
      ExprPtr negB = mkUnary(UnOp::Not, cThen.cond);
      if (!equal(cElse.cond, negB))
        stepFail("else conjunction's condition must be the negated branch condition");
      return Judgment::triple(cThen.b, mkIf(cThen.cond, tThen.b, tElse.b), tThen.c);
    }
    if (r == "OneWayIf") {
      wantPremises(spec, 4);
      const Judgment& tThen = premiseKind(spec, 0, ctx, Judgment::Kind::Triple);
      const Judgment& oElse = premiseKind(spec, 1, ctx, Judgment::Kind::Ord);
      const Judgment& cThen = premiseKind(spec, 2, ctx, Judgment::Kind::Conj);
      const Judgment& cElse = premiseKind(spec, 3, ctx, Judgment::Kind::Conj);
      if (!equal(oElse.b, tThen.c))
        stepFail("the else ordering must land in the triple's post-program");
      if (!equal(cThen.a, tThen.a)) stepFail("then conjunction must give the then pre-program");
      if (!equal(cElse.a, oElse.a)) stepFail("else conjunction must give the ordering's left side");
      if (!equal(cThen.b, cElse.b)) stepFail("both conjunctions must share the base pre-program");
      ExprPtr negB = mkUnary(UnOp::Not, cThen.cond);
      if (!equal(cElse.cond, negB))
        stepFail("else conjunction's condition must be the negated branch condition");
      return Judgment::triple(cThen.b, mkIf(cThen.cond, tThen.b, nullptr), tThen.c);
    }
    if (r == "PrefixOrd") {
      StatPtr g = parseProg(pl, "gamma");
      StatPtr a = parseProg(pl, "alpha");
      return Judgment::ord(mkSeq(g, a), a);
    }
    if (r == "EquivNonrecVoid" || r == "EquivNonrec") {
      StatPtr call = parseProg(pl, "call");
      Stat::Kind want = r == "EquivNonrec" ? Stat::Kind::AssignCall : Stat::Kind::ProcCall;
      if (call->kind != want)
        stepFail(r == "EquivNonrec" ? "call must have the form r := p(...)"
                                    : "call must have the form p(...)");
      try {
        StatPtr inl = inlineCall(call, prog_);
        typecheckStat(inl, prog_, uni_);
        return Judgment::equiv(call, inl);
      } catch (const std::exception& e) {
        stepFail(e.what());
      }
    }
    if (r == "EquivRefl") {
      StatPtr p = parseProg(pl, "program");
      return Judgment::equiv(p, p);
    }
    if (r == "EquivSym") {
      wantPremises(spec, 1);
      const Judgment& e = premiseKind(spec, 0, ctx, Judgment::Kind::Equiv);
      return Judgment::equiv(e.b, e.a);
    }
    if (r == "EquivTrans") {
      wantPremises(spec, 2);
      const Judgment& e1 = premiseKind(spec, 0, ctx, Judgment::Kind::Equiv);
      const Judgment& e2 = premiseKind(spec, 1, ctx, Judgment::Kind::Equiv);
      if (!equal(e1.b, e2.a)) stepFail("the middle programs differ");
      return Judgment::equiv(e1.a, e2.b);
    }
    if (r == "EquivCongruence") {
      wantPremises(spec, 1);
      const Judgment& e = premiseKind(spec, 0, ctx, Judgment::Kind::Equiv);
      StatPtr whole = parseProg(pl, "program");
      std::vector<int> path = parsePath(pl);
      StatPtr sub = subterm(whole, path);
      if (!sub) stepFail("path does not address a statement");
      if (!equal(sub, e.a)) stepFail("subterm at path differs from the equivalence's left side");
      StatPtr out = replaceSubterm(whole, path, e.b);
      try {
        typecheckStat(out, prog_, uni_);
      } catch (const std::exception& ex) {
        stepFail(std::string("rewritten program is ill-typed: ") + ex.what());
      }
      return Judgment::equiv(whole, out);
    }
    if (r == "RewriteDischarge") {
      if (!pl.contains("rewrite")) stepFail("RewriteDischarge needs a \"rewrite\" name");
      std::string name = pl.at("rewrite").get<std::string>();
      StatPtr before = parseProg(pl, "program");
      std::vector<int> path = parsePath(pl);
      RewriteArgs args;
      if (pl.contains("dir")) args.dir = pl.at("dir").get<std::string>();
      if (pl.contains("var")) args.var = pl.at("var").get<std::string>();
      if (pl.contains("expr")) {
        try {
          args.expr = parseExpr(pl.at("expr").get<std::string>());
        } catch (const std::exception& e) {
          stepFail(std::string("bad \"expr\": ") + e.what());
        }
      }
      try {
        StatPtr after = applyRewrite(name, before, path, args, prog_, &uni_);
        typecheckStat(after, prog_, uni_);
        return Judgment::equiv(before, after);
      } catch (const std::exception& e) {
        stepFail(e.what());
      }
    }
    if (r == "SemanticDischarge") {
      if (spec.conclusion.is_null())
        stepFail("SemanticDischarge needs the judgment as its conclusion");
      Judgment j = parseJudgment(spec.conclusion);
      Verdict v = discharge(j);
      if (v.status == Verdict::Status::Valid) return j;
      if (v.status == Verdict::Status::Unknown)
        stepFail("semantic check returned UNKNOWN (" + v.detail + ")");
      stepFail("semantic check returned INVALID: " + v.detail);
    }
    if (r == "AxiomDischarge") {
      if (spec.conclusion.is_null())
        stepFail("AxiomDischarge needs the judgment as its conclusion");
      Judgment j = parseJudgment(spec.conclusion);
      axiomSteps_.push_back(spec.id);
      return j;
    }
    if (r == "HypothesisDischarge") {
      if (!ih) stepFail("the inductive hypothesis is only available inside EquivRecursive");
      if (spec.conclusion.is_null())
        stepFail("HypothesisDischarge needs the judgment as its conclusion");
      Judgment j = parseJudgment(spec.conclusion);
      checkHypothesisInstance(*ih, j);
      return j;
    }
    if (r == "EquivRecursive") {
      return equivRecursive(spec);
    }
    stepFail("unknown rule '" + r + "'");
  }

  std::vector<int> parsePath(const json& pl) {
    std::vector<int> path;
    if (pl.contains("path")) {
      if (!pl.at("path").is_array()) stepFail("\"path\" must be an array of child indices");
      for (auto& x : pl.at("path")) path.push_back(x.get<int>());
    }
    return path;
  }

  // -- EquivRecursive ---------------------------------------------------------

  static bool callShape(const StatPtr& s, const std::string& proc, std::string& target,
                        std::vector<ExprPtr>& args) {
    if (!s || s->kind != Stat::Kind::AssignCall || s->callee != proc) return false;
    target = s->var;
    args = s->exprs;
    return true;
  }

  IhContext buildIhContext(const Judgment& goal, const std::string& pre, const std::string& prg,
                           const std::string& post) {
    IhContext ih;
    ih.goal = goal;
    ih.preProc = pre;
    ih.progProc = prg;
    ih.postProc = post;
    std::string t1, t2, t3;
    std::vector<ExprPtr> a1, a2, a3;
    if (goal.a->kind != Stat::Kind::Seq || !callShape(goal.a->s1, pre, t1, a1) ||
        !callShape(goal.a->s2, prg, t2, a2))
      stepFail("left side must be X := " + pre + "(...); X := " + prg + "(...)");
    if (!callShape(goal.b, post, t3, a3))
      stepFail("right side must be X := " + post + "(...)");
    if (t1 != t2 || t2 != t3)
      stepFail("all three calls must assign the same target variable");
    ih.goalSlots.push_back(mkVar(t1));
    for (auto& e : a1) ih.goalSlots.push_back(e);
    for (auto& e : a2) ih.goalSlots.push_back(e);
    for (auto& e : a3) ih.goalSlots.push_back(e);
    ih.slotClass.assign(ih.goalSlots.size(), -1);
    int classes = 0;
    for (size_t i = 0; i < ih.goalSlots.size(); ++i) {
      if (ih.slotClass[i] >= 0) continue;
      ih.slotClass[i] = classes;
      for (size_t k = i + 1; k < ih.goalSlots.size(); ++k)
        if (ih.slotClass[k] < 0 && equal(ih.goalSlots[i], ih.goalSlots[k]))
          ih.slotClass[k] = classes;
      ++classes;
    }
    ih.targetClass = ih.slotClass[0];
    return ih;
  }

  void checkHypothesisInstance(const IhContext& ih, const Judgment& j) {
    if (j.kind != Judgment::Kind::Equiv) stepFail("the hypothesis is an equivalence");
    if (equalJudgment(j, ih.goal))
      stepFail("hypothesis misuse: the goal itself cannot be cited");
    std::string t1, t2, t3;
    std::vector<ExprPtr> a1, a2, a3;
    if (j.a->kind != Stat::Kind::Seq || !callShape(j.a->s1, ih.preProc, t1, a1) ||
        !callShape(j.a->s2, ih.progProc, t2, a2) || !callShape(j.b, ih.postProc, t3, a3) ||
        t1 != t2 || t2 != t3)
      stepFail("hypothesis misuse: the citation is not a recursive-call composition of " +
               ih.preProc + "/" + ih.progProc + "/" + ih.postProc);
    std::vector<ExprPtr> slots;
    slots.push_back(mkVar(t1));
    for (auto& e : a1) slots.push_back(e);
    for (auto& e : a2) slots.push_back(e);
    for (auto& e : a3) slots.push_back(e);
    if (slots.size() != ih.goalSlots.size())
      stepFail("hypothesis misuse: argument arity differs from the goal");
    // The citation must be an instance: each goal slot class maps to one
    // expression, and the target class maps to the target variable.
    std::map<int, ExprPtr> subst;
    for (size_t i = 0; i < slots.size(); ++i) {
      auto it = subst.find(ih.slotClass[i]);
      if (it == subst.end()) {
        subst.emplace(ih.slotClass[i], slots[i]);
      } else if (!equal(it->second, slots[i])) {
        stepFail("hypothesis misuse: argument wiring differs from the goal composition");
      }
    }
    if (!equal(subst.at(ih.targetClass), static_cast<ExprPtr>(mkVar(t1))))
      stepFail("hypothesis misuse: the target slot must carry the target variable");
  }

  Judgment equivRecursive(const ProofStepSpec& spec) {
    const json& pl = spec.payload;
    if (!pl.contains("procs") || !pl.at("procs").is_array() || pl.at("procs").size() != 3)
      stepFail("EquivRecursive needs \"procs\": [pre, prog, post]");
    std::string pre = pl.at("procs")[0].get<std::string>();
    std::string prg = pl.at("procs")[1].get<std::string>();
    std::string post = pl.at("procs")[2].get<std::string>();
    for (auto& name : {pre, prg, post}) {
      const ProcDef* d = prog_.proc(name);
      if (!d) stepFail("unknown procedure '" + name + "'");
      if (!d->recursive) stepFail("procedure '" + name + "' is not recursive");
    }
    Judgment goal = Judgment::equiv(parseProg(pl, "left"), parseProg(pl, "right"));
    IhContext ih = buildIhContext(goal, pre, prg, post);

    if (!pl.contains("steps") || !pl.at("steps").is_array())
      stepFail("EquivRecursive needs a sub-derivation in \"steps\"");
    std::vector<ProofStepSpec> subSteps;
    std::set<std::string> ids;
    try {
      for (auto& js : pl.at("steps")) {
        ProofStepSpec st;
        st.id = js.at("id").get<std::string>();
        st.rule = js.at("rule").get<std::string>();
        if (js.contains("premises"))
          for (auto& p : js.at("premises")) st.premises.push_back(p.get<std::string>());
        if (js.contains("payload")) st.payload = js.at("payload");
        if (js.contains("conclusion")) st.conclusion = js.at("conclusion");
        if (!ids.insert(st.id).second) stepFail("duplicate sub-step id '" + st.id + "'");
        subSteps.push_back(std::move(st));
      }
    } catch (const json::exception& e) {
      stepFail(std::string("bad sub-derivation: ") + e.what());
    }
    if (subSteps.empty()) stepFail("the sub-derivation is empty");

    std::map<std::string, Judgment> subCtx;
    for (auto& st : subSteps) {
      Judgment j = verifyStep(st, subCtx, &ih);
      checkDeclaredConclusion(st, j);
      subCtx.emplace(st.id, j);
    }
    const Judgment& last = subCtx.at(subSteps.back().id);
    if (!equalJudgment(last, goal))
      stepFail("the sub-derivation's final step does not conclude the goal equivalence");

    // Bounded semantic cross-check: the composed calls must agree everywhere
    // the depth bound reaches; INVALID is fatal, fuel truncation is not.
    int depthBound = pl.value("depthBound", 8);
    ExecLimits lim{script_.fuel, depthBound};
    SemanticChecker cross(ExecContext{&prog_, &uni_}, lim, jobs_);
    Verdict v = cross.checkEquiv(goal.a, goal.b);
    semanticChecks_++;
    statesEnumerated_ += v.statesEnumerated;
    maxFuelUsed_ = std::max(maxFuelUsed_, v.maxFuelUsed);
    if (v.status == Verdict::Status::Invalid)
      stepFail("bounded semantic cross-check found a counterexample: " + v.detail);
    if (v.status == Verdict::Status::Unknown && !v.unknownFuel)
      stepFail("bounded semantic cross-check failed: " + v.detail);
    return goal;
  }
};

}  // namespace

DerivationReport checkDerivation(const Script& script, const Program& prog, const Universe& uni,
                                 int jobs) {
  return DerivationChecker(script, prog, uni, jobs).run();
}

const std::vector<std::string>& kernelRuleNames() {
  static const std::vector<std::string> names = {
      "SequenceAxiom", "EmptyPreProgram", "EmptyProgram", "TradingLR", "TradingRL",
      "Append",        "Substitution",    "PreStrengthen", "PostWeaken", "SeqComp",
      "While",         "WhileConsequence", "If",           "OneWayIf",  "PrefixOrd",
      "EquivNonrecVoid", "EquivNonrec",   "EquivRefl",    "EquivSym",  "EquivTrans",
      "EquivCongruence", "SemanticDischarge", "RewriteDischarge", "AxiomDischarge",
      "HypothesisDischarge", "EquivRecursive"};
  return names;
}

}  // namespace optri
