#include "checker.hpp"

#include <algorithm>
#include <sstream>

namespace optri {

Judgment Judgment::triple(StatPtr pre, StatPtr prog, StatPtr post) {
  Judgment j;
  j.kind = Kind::Triple;
  j.a = std::move(pre);
  j.b = std::move(prog);
  j.c = std::move(post);
  return j;
}
Judgment Judgment::ord(StatPtr p, StatPtr q) {
  Judgment j;
  j.kind = Kind::Ord;
  j.a = std::move(p);
  j.b = std::move(q);
  return j;
}
Judgment Judgment::equiv(StatPtr p, StatPtr q) {
  Judgment j;
  j.kind = Kind::Equiv;
  j.a = std::move(p);
  j.b = std::move(q);
  return j;
}
Judgment Judgment::conj(StatPtr p1, StatPtr p, ExprPtr cond) {
  Judgment j;
  j.kind = Kind::Conj;
  j.a = std::move(p1);
  j.b = std::move(p);
  j.cond = std::move(cond);
  return j;
}

bool equalJudgment(const Judgment& x, const Judgment& y) {
  if (x.kind != y.kind) return false;
  if (!equal(x.a, y.a) || !equal(x.b, y.b) || !equal(x.c, y.c)) return false;
  if ((x.cond == nullptr) != (y.cond == nullptr)) return false;
  if (x.cond && !equal(x.cond, y.cond)) return false;
  return true;
}

std::string judgmentKindName(Judgment::Kind k) {
  switch (k) {
    case Judgment::Kind::Triple: return "triple";
    case Judgment::Kind::Ord: return "ord";
    case Judgment::Kind::Equiv: return "equiv";
    case Judgment::Kind::Conj: return "conj";
  }
  return "?";
}

namespace {

std::string flagsDetail(bool fuel, const std::set<std::string>& kinds) {
  std::ostringstream os;
  if (fuel) os << "fuel-exhausted";
  for (auto& k : kinds) {
    if (os.tellp() > 0) os << ", ";
    os << k;
  }
  return os.str();
}

bool mergeFlags(Verdict& v, const PostStates& ps) {
  v.statesEnumerated += ps.statesEnumerated;
  v.maxFuelUsed = std::max(v.maxFuelUsed, ps.maxFuelUsed);
  if (ps.flagged()) {
    v.status = Verdict::Status::Unknown;
    v.unknownFuel = ps.anyFuelExhausted;
    v.unknownError = ps.anyRuntimeError;
    v.detail = flagsDetail(ps.anyFuelExhausted, ps.errorKinds);
    return true;
  }
  return false;
}

bool mergeFlags(Verdict& v, const BehaviorSet& bs) {
  v.statesEnumerated += bs.statesEnumerated;
  v.maxFuelUsed = std::max(v.maxFuelUsed, bs.maxFuelUsed);
  if (bs.flagged()) {
    v.status = Verdict::Status::Unknown;
    v.unknownFuel = bs.anyFuelExhausted;
    v.unknownError = bs.anyRuntimeError;
    v.detail = flagsDetail(bs.anyFuelExhausted, bs.errorKinds);
    return true;
  }
  return false;
}

}  // namespace

Verdict SemanticChecker::checkTriple(const StatPtr& pre, const StatPtr& prog,
                                     const StatPtr& post) const {
  Verdict v;
  PostStates lhs = poststates(cx_, mkSeq(pre, prog), lim_, jobs_);
  if (mergeFlags(v, lhs)) return v;
  PostStates rhs = poststates(cx_, post, lim_, jobs_);
  if (mergeFlags(v, rhs)) return v;
  for (auto& s : lhs.states) {
    if (!rhs.states.count(s)) {
      v.status = Verdict::Status::Invalid;
      v.ceState = s;
      v.detail = "post-state of pre;prog not covered by post-program: " + describeState(s);
      return v;
    }
  }
  v.status = Verdict::Status::Valid;
  return v;
}

Verdict SemanticChecker::checkOrd(const StatPtr& p, const StatPtr& q) const {
  Verdict v;
  PostStates lhs = poststates(cx_, p, lim_, jobs_);
  if (mergeFlags(v, lhs)) return v;
  PostStates rhs = poststates(cx_, q, lim_, jobs_);
  if (mergeFlags(v, rhs)) return v;
  for (auto& s : lhs.states) {
    if (!rhs.states.count(s)) {
      v.status = Verdict::Status::Invalid;
      v.ceState = s;
      v.detail = "post-state of the left program missing on the right: " + describeState(s);
      return v;
    }
  }
  v.status = Verdict::Status::Valid;
  return v;
}

Verdict SemanticChecker::checkEquiv(const StatPtr& p, const StatPtr& q) const {
  Verdict v;
  BehaviorSet lhs = behaviors(cx_, p, lim_, jobs_);
  if (mergeFlags(v, lhs)) return v;
  BehaviorSet rhs = behaviors(cx_, q, lim_, jobs_);
  if (mergeFlags(v, rhs)) return v;
  for (auto& b : lhs.pairs) {
    if (!rhs.pairs.count(b)) {
      v.status = Verdict::Status::Invalid;
      v.ceBehavior = b;
      v.detail = "behavior only on the left: " + describeState(b.first) + "  ~>  " +
                 describeState(b.second);
      return v;
    }
  }
  for (auto& b : rhs.pairs) {
    if (!lhs.pairs.count(b)) {
      v.status = Verdict::Status::Invalid;
      v.ceBehavior = b;
      v.detail = "behavior only on the right: " + describeState(b.first) + "  ~>  " +
                 describeState(b.second);
      return v;
    }
  }
  v.status = Verdict::Status::Valid;
  return v;
}

Verdict SemanticChecker::checkConj(const StatPtr& p1, const StatPtr& p,
                                   const ExprPtr& cond) const {
  Verdict v;
  PostStates lhs = poststates(cx_, p1, lim_, jobs_);
  if (mergeFlags(v, lhs)) return v;
  PostStates rhs = poststates(cx_, p, lim_, jobs_);
  if (mergeFlags(v, rhs)) return v;

  std::set<State> restricted;
  for (auto& s : rhs.states) {
    try {
      if (evalBool(cx_, cond, s)) restricted.insert(s);
    } catch (const EvalFailure& f) {
      v.status = Verdict::Status::Unknown;
      v.detail = "condition evaluation failed: " + f.kind;
      return v;
    }
  }
  for (auto& s : lhs.states) {
    if (!restricted.count(s)) {
      v.status = Verdict::Status::Invalid;
      v.ceState = s;
      v.detail = "left post-state outside pst(base) ∩ cond: " + describeState(s);
      return v;
    }
  }
  for (auto& s : restricted) {
    if (!lhs.states.count(s)) {
      v.status = Verdict::Status::Invalid;
      v.ceState = s;
      v.detail = "state in pst(base) ∩ cond unreachable on the left: " + describeState(s);
      return v;
    }
  }
  v.status = Verdict::Status::Valid;
  return v;
}

Verdict SemanticChecker::check(const Judgment& j) const {
  switch (j.kind) {
    case Judgment::Kind::Triple:
      return checkTriple(j.a, j.b, j.c);
    case Judgment::Kind::Ord:
      return checkOrd(j.a, j.b);
    case Judgment::Kind::Equiv:
      return checkEquiv(j.a, j.b);
    case Judgment::Kind::Conj:
      return checkConj(j.a, j.b, j.cond);
  }
  return {};
}

}  // namespace optri
