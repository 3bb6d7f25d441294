#include "universe.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "diag.hpp"

namespace optri {

using nlohmann::json;

const Domain* Universe::find(const std::string& name) const {
  for (auto& [n, d] : vars)
    if (n == name) return &d;
  return nullptr;
}

namespace {

Domain domainFromJson(const json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("type"))
    throw UniverseError("descriptor for '" + name + "' must be an object with a \"type\" key");
  std::string ty = j.at("type").get<std::string>();
  auto needInt = [&](const char* k) -> long long {
    if (!j.contains(k))
      throw UniverseError("descriptor for '" + name + "' is missing \"" + k + "\"");
    return j.at(k).get<long long>();
  };
  Domain d;
  if (ty == "int") {
    d = Domain::intRange(needInt("lo"), needInt("hi"));
    if (d.lo > d.hi) throw UniverseError("empty int range for '" + name + "'");
  } else if (ty == "bool") {
    d = Domain::boolean();
  } else if (ty == "set") {
    d = Domain::setRange(needInt("lo"), needInt("hi"));
    if (d.lo > d.hi) throw UniverseError("empty set universe for '" + name + "'");
    if (d.hi - d.lo + 1 > 24) throw UniverseError("set universe for '" + name + "' is too wide");
  } else if (ty == "ref") {
    if (!j.contains("record"))
      throw UniverseError("ref descriptor for '" + name + "' is missing \"record\"");
    d = Domain::ref(j.at("record").get<std::string>(), j.value("prealloc", false));
  } else if (ty == "array") {
    if (!j.contains("elem"))
      throw UniverseError("array descriptor for '" + name + "' is missing \"elem\"");
    Domain el = domainFromJson(j.at("elem"), name + ".elem");
    if (el.kind != Domain::Kind::Int && el.kind != Domain::Kind::Ref)
      throw UniverseError("array elements of '" + name + "' must be int or ref");
    long long len = needInt("len");
    if (len <= 0 || len > 64) throw UniverseError("bad array length for '" + name + "'");
    d = Domain::array(static_cast<int>(len), el, j.value("prealloc", false));
  } else {
    throw UniverseError("unknown domain type \"" + ty + "\" for '" + name + "'");
  }
  d.aux = j.value("aux", false);
  return d;
}

constexpr unsigned long long kSat = ~0ull;

unsigned long long satMul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

// Field-combination count of one fresh record: int and bool fields range over
// their domains, reference fields start at nil.
unsigned long long recordOptionCount(const RecordDecl& r) {
  unsigned long long n = 1;
  for (auto& f : r.fields) {
    if (f.type.kind == Domain::Kind::Int)
      n = satMul(n, static_cast<unsigned long long>(f.type.hi - f.type.lo + 1));
    else if (f.type.kind == Domain::Kind::Bool)
      n = satMul(n, 2);
  }
  return n;
}

unsigned long long optionCount(const Universe& u, const Domain& d) {
  if (d.aux) return 1;
  switch (d.kind) {
    case Domain::Kind::Int:
      return static_cast<unsigned long long>(d.hi - d.lo + 1);
    case Domain::Kind::Bool:
      return 2;
    case Domain::Kind::Set: {
      long long span = d.hi - d.lo + 1;
      return 1ull << span;
    }
    case Domain::Kind::Ref: {
      if (!d.prealloc) return 1;
      auto it = u.records.find(d.record);
      if (it == u.records.end()) throw UniverseError("unknown record type '" + d.record + "'");
      return 1 + recordOptionCount(it->second);
    }
    case Domain::Kind::Array: {
      unsigned long long per;
      if (d.elem->kind == Domain::Kind::Int) {
        per = static_cast<unsigned long long>(d.elem->hi - d.elem->lo + 1);
      } else if (d.prealloc) {
        auto it = u.records.find(d.elem->record);
        if (it == u.records.end())
          throw UniverseError("unknown record type '" + d.elem->record + "'");
        per = recordOptionCount(it->second);
      } else {
        per = 1;  // all slots nil
      }
      unsigned long long n = 1;
      for (int i = 0; i < d.len; ++i) n = satMul(n, per);
      return n;
    }
  }
  return 1;
}

// Instantiates option k of one fresh record (field odometer, first field most
// significant).
RecordInst recordOption(const RecordDecl& r, unsigned long long k) {
  std::vector<unsigned long long> sizes;
  for (auto& f : r.fields) {
    if (f.type.kind == Domain::Kind::Int)
      sizes.push_back(static_cast<unsigned long long>(f.type.hi - f.type.lo + 1));
    else if (f.type.kind == Domain::Kind::Bool)
      sizes.push_back(2);
    else
      sizes.push_back(1);
  }
  std::vector<unsigned long long> digit(sizes.size(), 0);
  for (size_t i = sizes.size(); i-- > 0;) {
    digit[i] = k % sizes[i];
    k /= sizes[i];
  }
  RecordInst inst;
  inst.type = r.name;
  for (size_t i = 0; i < r.fields.size(); ++i) {
    const Domain& ft = r.fields[i].type;
    if (ft.kind == Domain::Kind::Int)
      inst.fields.push_back(Value::ofInt(ft.lo + static_cast<long long>(digit[i])));
    else if (ft.kind == Domain::Kind::Bool)
      inst.fields.push_back(Value::ofBool(digit[i] != 0));
    else
      inst.fields.push_back(Value::ofRef(kNil));
  }
  return inst;
}

// Writes option k of a variable into the state (appending any fresh records).
void applyOption(const Universe& u, State& st, const std::string& name, const Domain& d,
                 unsigned long long k) {
  if (d.aux) {
    st.store[name] = defaultValue(d);
    return;
  }
  switch (d.kind) {
    case Domain::Kind::Int:
      st.store[name] = Value::ofInt(d.lo + static_cast<long long>(k));
      return;
    case Domain::Kind::Bool:
      st.store[name] = Value::ofBool(k != 0);
      return;
    case Domain::Kind::Set: {
      std::vector<long long> elems;
      long long span = d.hi - d.lo + 1;
      for (long long bit = 0; bit < span; ++bit)
        if (k & (1ull << bit)) elems.push_back(d.lo + bit);
      st.store[name] = Value::ofSet(std::move(elems));
      return;
    }
    case Domain::Kind::Ref: {
      if (!d.prealloc || k == 0) {
        st.store[name] = Value::ofRef(kNil);
        return;
      }
      const RecordDecl& r = u.records.at(d.record);
      st.heap.push_back(recordOption(r, k - 1));
      st.store[name] = Value::ofRef(static_cast<Loc>(st.heap.size() - 1));
      return;
    }
    case Domain::Kind::Array: {
      std::vector<Value> elems;
      if (d.elem->kind == Domain::Kind::Int) {
        unsigned long long per = static_cast<unsigned long long>(d.elem->hi - d.elem->lo + 1);
        std::vector<unsigned long long> digit(static_cast<size_t>(d.len), 0);
        for (size_t i = digit.size(); i-- > 0;) {
          digit[i] = k % per;
          k /= per;
        }
        for (int i = 0; i < d.len; ++i)
          elems.push_back(Value::ofInt(d.elem->lo + static_cast<long long>(digit[i])));
      } else if (d.prealloc) {
        const RecordDecl& r = u.records.at(d.elem->record);
        unsigned long long per = recordOptionCount(r);
        std::vector<unsigned long long> digit(static_cast<size_t>(d.len), 0);
        for (size_t i = digit.size(); i-- > 0;) {
          digit[i] = k % per;
          k /= per;
        }
        for (int i = 0; i < d.len; ++i) {
          st.heap.push_back(recordOption(r, digit[static_cast<size_t>(i)]));
          elems.push_back(Value::ofRef(static_cast<Loc>(st.heap.size() - 1)));
        }
      } else {
        for (int i = 0; i < d.len; ++i) elems.push_back(Value::ofRef(kNil));
      }
      st.store[name] = Value::ofArray(std::move(elems));
      return;
    }
  }
}

}  // namespace

Value defaultValue(const Domain& d) {
  switch (d.kind) {
    case Domain::Kind::Int:
      return Value::ofInt(d.lo);
    case Domain::Kind::Bool:
      return Value::ofBool(false);
    case Domain::Kind::Set:
      return Value::ofSet({});
    case Domain::Kind::Ref:
      return Value::ofRef(kNil);
    case Domain::Kind::Array: {
      std::vector<Value> elems;
      for (int i = 0; i < d.len; ++i) elems.push_back(defaultValue(*d.elem));
      return Value::ofArray(std::move(elems));
    }
  }
  return Value::ofInt(0);
}

Universe loadUniverse(const std::string& jsonText) {
  json j;
  try {
    j = json::parse(jsonText);
  } catch (const json::exception& e) {
    throw UniverseError(std::string("bad universe JSON: ") + e.what());
  }
  if (!j.is_object()) throw UniverseError("universe file must be a JSON object");
  Universe u;
  u.hash = fnv1aHex(jsonText);
  bool sawBudget = false, sawCap = false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "heapBudget") {
      u.heapBudget = it.value().get<long long>();
      sawBudget = true;
      continue;
    }
    if (key == "enumerationCap") {
      u.enumerationCap = it.value().get<long long>();
      sawCap = true;
      continue;
    }
    u.vars.emplace_back(key, domainFromJson(it.value(), key));
  }
  if (!sawBudget) throw UniverseError("universe is missing \"heapBudget\"");
  if (!sawCap) throw UniverseError("universe is missing \"enumerationCap\"");
  if (u.heapBudget < 0 || u.enumerationCap <= 0)
    throw UniverseError("heapBudget must be >= 0 and enumerationCap > 0");
  std::sort(u.vars.begin(), u.vars.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return u;
}

void bindRecords(Universe& u, const Program& p) {
  u.records.clear();
  for (auto& r : p.records) u.records[r.name] = r;
  for (auto& [name, d] : u.vars) {
    const std::string* rec = nullptr;
    if (d.kind == Domain::Kind::Ref) rec = &d.record;
    if (d.kind == Domain::Kind::Array && d.elem->kind == Domain::Kind::Ref)
      rec = &d.elem->record;
    if (rec && u.records.find(*rec) == u.records.end())
      throw UniverseError("universe variable '" + name + "' references undeclared record '" +
                          *rec + "'");
  }
}

unsigned long long stateCount(const Universe& u) {
  unsigned long long n = 1;
  for (auto& [name, d] : u.vars) n = satMul(n, optionCount(u, d));
  return n;
}

std::vector<State> enumerateStates(const Universe& u) {
  unsigned long long n = stateCount(u);
  if (n > static_cast<unsigned long long>(u.enumerationCap))
    throw UniverseTooLarge(n, static_cast<unsigned long long>(u.enumerationCap));

  std::vector<unsigned long long> sizes;
  sizes.reserve(u.vars.size());
  long long preallocCount = 0;
  for (auto& [name, d] : u.vars) {
    sizes.push_back(optionCount(u, d));
    if (!d.aux && d.kind == Domain::Kind::Array && d.elem->kind == Domain::Kind::Ref &&
        d.prealloc)
      preallocCount += d.len;
    if (!d.aux && d.kind == Domain::Kind::Ref && d.prealloc) preallocCount += 1;
  }
  if (preallocCount > u.heapBudget)
    throw UniverseError("pre-allocated records exceed the heap budget");

  std::vector<State> out;
  out.reserve(static_cast<size_t>(n));
  std::vector<unsigned long long> digit(u.vars.size(), 0);
  for (unsigned long long idx = 0; idx < n; ++idx) {
    State st;
    for (size_t i = 0; i < u.vars.size(); ++i)
      applyOption(u, st, u.vars[i].first, u.vars[i].second, digit[i]);
    out.push_back(std::move(st));
    // odometer, last variable fastest
    for (size_t i = u.vars.size(); i-- > 0;) {
      if (++digit[i] < sizes[i]) break;
      digit[i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

std::string fnv1aHex(const std::string& data) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) os << "0123456789abcdef"[(h >> (i * 4)) & 0xF];
  return os.str();
}

}  // namespace optri
