#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ast.hpp"
#include "interp.hpp"

namespace optri {

// The four judgments: Triple {a} b {c}, Ord a <= b (post-state inclusion),
// Equiv a == b (behavior equality), Conj a =. (b, cond).
struct Judgment {
  enum class Kind { Triple, Ord, Equiv, Conj };
  Kind kind = Kind::Equiv;
  StatPtr a, b, c;
  ExprPtr cond;

  static Judgment triple(StatPtr pre, StatPtr prog, StatPtr post);
  static Judgment ord(StatPtr p, StatPtr q);
  static Judgment equiv(StatPtr p, StatPtr q);
  static Judgment conj(StatPtr p1, StatPtr p, ExprPtr cond);
};

bool equalJudgment(const Judgment& x, const Judgment& y);
std::string judgmentKindName(Judgment::Kind k);

struct Verdict {
  enum class Status { Valid, Invalid, Unknown };
  Status status = Status::Unknown;
  std::optional<State> ceState;                          // Triple/Ord/Conj witness
  std::optional<std::pair<State, State>> ceBehavior;     // Equiv witness
  std::string detail;  // unknown reason or counterexample description
  bool unknownFuel = false;   // UNKNOWN caused by fuel/depth exhaustion
  bool unknownError = false;  // UNKNOWN caused by runtime errors
  long long statesEnumerated = 0;
  long long maxFuelUsed = 0;

  bool valid() const { return status == Status::Valid; }
};

class SemanticChecker {
 public:
  SemanticChecker(ExecContext cx, ExecLimits lim, int jobs = 1)
      : cx_(cx), lim_(lim), jobs_(jobs) {}

  Verdict checkTriple(const StatPtr& pre, const StatPtr& prog, const StatPtr& post) const;
  Verdict checkOrd(const StatPtr& p, const StatPtr& q) const;
  Verdict checkEquiv(const StatPtr& p, const StatPtr& q) const;
  Verdict checkConj(const StatPtr& p1, const StatPtr& p, const ExprPtr& cond) const;
  Verdict check(const Judgment& j) const;

  const ExecContext& context() const { return cx_; }
  const ExecLimits& limits() const { return lim_; }

 private:
  ExecContext cx_;
  ExecLimits lim_;
  int jobs_;
};

}  // namespace optri
