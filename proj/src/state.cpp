#include "state.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace optri {

Value Value::ofInt(long long v) {
  Value x;
  x.kind = Kind::Int;
  x.i = v;
  return x;
}
Value Value::ofBool(bool v) {
  Value x;
  x.kind = Kind::Bool;
  x.b = v;
  return x;
}
Value Value::ofRef(Loc l) {
  Value x;
  x.kind = Kind::Ref;
  x.loc = l;
  return x;
}
Value Value::ofSet(std::vector<long long> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Value x;
  x.kind = Kind::Set;
  x.set = std::move(elems);
  return x;
}
Value Value::ofArray(std::vector<Value> elems) {
  Value x;
  x.kind = Kind::Array;
  x.arr = std::move(elems);
  return x;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Int: return a.i == b.i;
    case Value::Kind::Bool: return a.b == b.b;
    case Value::Kind::Ref: return (a.loc < 0 && b.loc < 0) || a.loc == b.loc;
    case Value::Kind::Set: return a.set == b.set;
    case Value::Kind::Array: return a.arr == b.arr;
  }
  return false;
}

bool operator<(const Value& a, const Value& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case Value::Kind::Int: return a.i < b.i;
    case Value::Kind::Bool: return a.b < b.b;
    case Value::Kind::Ref: {
      Loc x = a.loc < 0 ? kNil : a.loc;
      Loc y = b.loc < 0 ? kNil : b.loc;
      return x < y;
    }
    case Value::Kind::Set: return a.set < b.set;
    case Value::Kind::Array: return a.arr < b.arr;
  }
  return false;
}

bool operator==(const RecordInst& a, const RecordInst& b) {
  return a.type == b.type && a.fields == b.fields;
}
bool operator<(const RecordInst& a, const RecordInst& b) {
  if (a.type != b.type) return a.type < b.type;
  return a.fields < b.fields;
}

bool operator==(const State& a, const State& b) { return a.store == b.store && a.heap == b.heap; }
bool operator<(const State& a, const State& b) {
  if (a.store != b.store) return a.store < b.store;
  return a.heap < b.heap;
}

namespace {

void visitRefs(const Value& v, const std::function<void(Loc)>& f) {
  if (v.kind == Value::Kind::Ref) {
    if (v.loc >= 0) f(v.loc);
  } else if (v.kind == Value::Kind::Array) {
    for (auto& e : v.arr) visitRefs(e, f);
  }
}

Value renumber(const Value& v, const std::vector<Loc>& newLoc) {
  if (v.kind == Value::Kind::Ref) {
    if (v.loc < 0) return Value::ofRef(kNil);
    return Value::ofRef(newLoc[static_cast<size_t>(v.loc)]);
  }
  if (v.kind == Value::Kind::Array) {
    Value out = v;
    for (auto& e : out.arr) e = renumber(e, newLoc);
    return out;
  }
  return v;
}

}  // namespace

State canonicalizeState(const State& s, const std::vector<std::string>& rootOrder) {
  std::vector<Loc> newLoc(s.heap.size(), kNil);
  std::vector<Loc> order;  // old locations in visit order

  std::function<void(Loc)> dfs = [&](Loc l) {
    if (l < 0 || static_cast<size_t>(l) >= s.heap.size()) return;
    if (newLoc[static_cast<size_t>(l)] != kNil) return;
    newLoc[static_cast<size_t>(l)] = static_cast<Loc>(order.size());
    order.push_back(l);
    for (auto& fv : s.heap[static_cast<size_t>(l)].fields) visitRefs(fv, dfs);
  };

  for (auto& name : rootOrder) {
    auto it = s.store.find(name);
    if (it != s.store.end()) visitRefs(it->second, dfs);
  }

  State out;
  out.heap.reserve(order.size());
  for (Loc old : order) {
    RecordInst r = s.heap[static_cast<size_t>(old)];
    for (auto& fv : r.fields) fv = renumber(fv, newLoc);
    out.heap.push_back(std::move(r));
  }
  for (auto& [name, v] : s.store) out.store.emplace(name, renumber(v, newLoc));
  return out;
}

State canonicalizeState(const State& s) {
  std::vector<std::string> roots;
  roots.reserve(s.store.size());
  for (auto& [name, _] : s.store) roots.push_back(name);
  return canonicalizeState(s, roots);
}

bool statesIsomorphic(const State& a, const State& b) {
  // Compare canonical store shapes first, then search for a heap bijection
  // between the reachable records. Reachability is resolved by restricting
  // both sides to their canonical (reachable-only) forms.
  State ca = canonicalizeState(a);
  State cb = canonicalizeState(b);
  if (ca.heap.size() != cb.heap.size()) return false;
  size_t n = ca.heap.size();
  if (ca.store.size() != cb.store.size()) return false;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<Loc> map(n);
    for (size_t i = 0; i < n; ++i) map[i] = static_cast<Loc>(perm[i]);
    bool ok = true;
    for (auto ia = ca.store.begin(), ib = cb.store.begin(); ia != ca.store.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(renumber(ia->second, map) == ib->second)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (size_t i = 0; i < n && ok; ++i) {
        RecordInst r = ca.heap[i];
        for (auto& fv : r.fields) fv = renumber(fv, map);
        ok = r == cb.heap[static_cast<size_t>(perm[i])];
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {
void describeValue(std::ostringstream& os, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: os << v.i; return;
    case Value::Kind::Bool: os << (v.b ? "tt" : "ff"); return;
    case Value::Kind::Ref:
      if (v.loc < 0)
        os << "nil";
      else
        os << '#' << v.loc;
      return;
    case Value::Kind::Set: {
      os << '{';
      for (size_t i = 0; i < v.set.size(); ++i) {
        if (i) os << ',';
        os << v.set[i];
      }
      os << '}';
      return;
    }
    case Value::Kind::Array: {
      os << '[';
      for (size_t i = 0; i < v.arr.size(); ++i) {
        if (i) os << ',';
        describeValue(os, v.arr[i]);
      }
      os << ']';
      return;
    }
  }
}
}  // namespace

std::string describeState(const State& s) {
  std::ostringstream os;
  bool first = true;
  for (auto& [name, v] : s.store) {
    if (!first) os << ' ';
    first = false;
    os << name << '=';
    describeValue(os, v);
  }
  for (size_t i = 0; i < s.heap.size(); ++i) {
    os << " #" << i << ':' << s.heap[i].type << '(';
    for (size_t f = 0; f < s.heap[i].fields.size(); ++f) {
      if (f) os << ',';
      describeValue(os, s.heap[i].fields[f]);
    }
    os << ')';
  }
  return os.str();
}

}  // namespace optri
