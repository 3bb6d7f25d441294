#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace optri {

// Heap location; negative means nil.
using Loc = int32_t;
constexpr Loc kNil = -1;

struct Value {
  enum class Kind { Int, Bool, Ref, Set, Array };
  Kind kind = Kind::Int;
  long long i = 0;
  bool b = false;
  Loc loc = kNil;
  std::vector<long long> set;  // sorted, unique
  std::vector<Value> arr;

  static Value ofInt(long long v);
  static Value ofBool(bool v);
  static Value ofRef(Loc l);
  static Value ofSet(std::vector<long long> elems);  // sorts and dedups
  static Value ofArray(std::vector<Value> elems);

  bool isNil() const { return kind == Kind::Ref && loc < 0; }
};

bool operator==(const Value& a, const Value& b);
bool operator<(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }

// A heap record instance. Field values are aligned with the record
// declaration's field order.
struct RecordInst {
  std::string type;
  std::vector<Value> fields;
};

bool operator==(const RecordInst& a, const RecordInst& b);
bool operator<(const RecordInst& a, const RecordInst& b);

// A program state: variable store plus heap. The allocation counter is the
// heap size; it is bookkeeping and takes no part in equality.
struct State {
  std::map<std::string, Value> store;
  std::vector<RecordInst> heap;
};

bool operator==(const State& a, const State& b);
bool operator<(const State& a, const State& b);
inline bool operator!=(const State& a, const State& b) { return !(a == b); }

// Canonical form: unreachable records dropped, reachable records renumbered
// by depth-first traversal from the store roots in rootOrder (field order as
// declared). Two states with equal stores modulo renumbering and isomorphic
// reachable heaps canonicalize identically.
State canonicalizeState(const State& s, const std::vector<std::string>& rootOrder);

// Store-name order (the default root order).
State canonicalizeState(const State& s);

// Test oracle helper: true when some bijection between the reachable parts of
// the two heaps makes the states equal. Exponential; intended for small heaps.
bool statesIsomorphic(const State& a, const State& b);

std::string describeState(const State& s);  // single-line human form

}  // namespace optri
