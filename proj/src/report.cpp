#include "report.hpp"

#include "version.hpp"

namespace optri {

using nlohmann::json;

json valueToJson(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int:
      return v.i;
    case Value::Kind::Bool:
      return v.b;
    case Value::Kind::Ref:
      if (v.loc < 0) return nullptr;
      return json{{"ref", v.loc}};
    case Value::Kind::Set: {
      json els = json::array();
      for (long long e : v.set) els.push_back(e);
      return json{{"set", els}};
    }
    case Value::Kind::Array: {
      json els = json::array();
      for (auto& e : v.arr) els.push_back(valueToJson(e));
      return json{{"array", els}};
    }
  }
  return nullptr;
}

json stateToJson(const State& s, const Universe& u) {
  json store = json::object();
  for (auto& [name, v] : s.store) store[name] = valueToJson(v);
  json heap = json::array();
  for (size_t i = 0; i < s.heap.size(); ++i) {
    json rec;
    rec["loc"] = static_cast<long long>(i);
    rec["type"] = s.heap[i].type;
    json fields = json::object();
    auto it = u.records.find(s.heap[i].type);
    if (it != u.records.end()) {
      for (size_t f = 0; f < s.heap[i].fields.size() && f < it->second.fields.size(); ++f)
        fields[it->second.fields[f].name] = valueToJson(s.heap[i].fields[f]);
    }
    rec["fields"] = fields;
    heap.push_back(rec);
  }
  return json{{"store", store}, {"heap", heap}};
}

namespace {
json toolHeader() {
  return json{{"name", kToolName}, {"version", kToolVersion}};
}
}  // namespace

std::string verdictName(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Valid: return "VALID";
    case Verdict::Status::Invalid: return "INVALID";
    case Verdict::Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

int verdictExitCode(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Valid: return 0;
    case Verdict::Status::Invalid: return 1;
    case Verdict::Status::Unknown: return 2;
  }
  return 2;
}

json verdictReport(const std::string& command, const Verdict& v, const Universe& u,
                   long long fuel) {
  json r;
  r["tool"] = toolHeader();
  r["command"] = command;
  r["universeHash"] = u.hash;
  r["fuel"] = fuel;
  r["verdict"] = verdictName(v.status);
  if (!v.detail.empty()) r["detail"] = v.detail;
  if (v.ceState) r["counterexample"] = json{{"state", stateToJson(*v.ceState, u)}};
  if (v.ceBehavior)
    r["counterexample"] = json{{"behavior", json{{"initial", stateToJson(v.ceBehavior->first, u)},
                                                 {"final", stateToJson(v.ceBehavior->second, u)}}}};
  r["stats"] =
      json{{"statesEnumerated", v.statesEnumerated}, {"maxFuelUsed", v.maxFuelUsed}};
  return r;
}

json poststatesReport(const PostStates& ps, const Universe& u, long long fuel) {
  json r;
  r["tool"] = toolHeader();
  r["command"] = "post";
  r["universeHash"] = u.hash;
  r["fuel"] = fuel;
  r["flags"] = json{{"anyRuntimeError", ps.anyRuntimeError},
                    {"anyFuelExhausted", ps.anyFuelExhausted}};
  json states = json::array();
  for (auto& s : ps.states) states.push_back(stateToJson(s, u));
  r["postStates"] = states;
  r["count"] = static_cast<long long>(ps.states.size());
  r["stats"] =
      json{{"statesEnumerated", ps.statesEnumerated}, {"maxFuelUsed", ps.maxFuelUsed}};
  return r;
}

json derivationReportJson(const DerivationReport& rep, const Universe& u, long long fuel) {
  json r;
  r["tool"] = toolHeader();
  r["command"] = "prove";
  r["universeHash"] = u.hash;
  r["fuel"] = fuel;
  r["status"] = rep.status;
  if (!rep.failedStep.empty()) r["failedStep"] = rep.failedStep;
  if (!rep.goalText.empty()) r["goal"] = rep.goalText;
  json ax = json::array();
  for (auto& a : rep.axiomSteps) ax.push_back(a);
  r["axioms"] = ax;
  json steps = json::array();
  for (auto& s : rep.steps) {
    json st;
    st["id"] = s.id;
    st["rule"] = s.rule;
    st["status"] = s.status;
    if (!s.details.empty()) st["details"] = s.details;
    steps.push_back(st);
  }
  r["steps"] = steps;
  r["stats"] = json{{"statesEnumerated", rep.statesEnumerated},
                    {"maxFuelUsed", rep.maxFuelUsed},
                    {"semanticChecks", rep.semanticChecks}};
  return r;
}

std::string verdictSummary(const Verdict& v) {
  std::string s = verdictName(v.status);
  if (!v.detail.empty()) s += " - " + v.detail;
  return s;
}

}  // namespace optri
