#pragma once

#include <string>

namespace optri {

// Fixed registry of pure intrinsic functions usable in expressions.
//   findMin(a, excl)  -> lowest index of a minimum element of array a whose
//                        index is not in set excl
//   findRank(a, r)    -> index of the rank-r element of array a; duplicates
//                        rank by ascending index, so the result is stable
enum class Intrinsic { FindMin, FindRank };

inline bool lookupIntrinsic(const std::string& name, Intrinsic& out) {
  if (name == "findMin") {
    out = Intrinsic::FindMin;
    return true;
  }
  if (name == "findRank") {
    out = Intrinsic::FindRank;
    return true;
  }
  return false;
}

inline int intrinsicArity(Intrinsic) { return 2; }

}  // namespace optri
