#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "checker.hpp"

namespace optri {

// One proof step as written in a .opp script. Payload and conclusion stay as
// raw JSON until the step is verified against the program's declarations.
struct ProofStepSpec {
  std::string id;
  std::string rule;
  std::vector<std::string> premises;
  nlohmann::json payload;     // may be null
  nlohmann::json conclusion;  // may be null for computed rules
};

struct Script {
  std::string programFile;
  std::string universeFile;
  long long fuel = 10000;
  std::vector<ProofStepSpec> steps;
  std::string goal;
};

// Parses the .opp JSON text. Throws ScriptError.
Script loadScript(const std::string& jsonText);

struct StepReport {
  std::string id;
  std::string rule;
  std::string status;  // "ok" | "failed" | "skipped"
  std::string details;
};

struct DerivationReport {
  std::string status;  // "PROVED" | "PROVED-WITH-AXIOMS" | "FAILED"
  std::string failedStep;
  std::vector<std::string> axiomSteps;
  std::vector<StepReport> steps;
  std::string goalText;  // pretty form of the goal judgment when proved
  long long statesEnumerated = 0;
  long long maxFuelUsed = 0;
  long long semanticChecks = 0;

  bool proved() const { return status != "FAILED"; }
};

// Verifies every step in order against the proof calculus; semantic
// discharges run the exhaustive checker over the universe. The universe must
// already have the program's records bound.
DerivationReport checkDerivation(const Script& script, const Program& prog,
                                 const Universe& uni, int jobs = 1);

const std::vector<std::string>& kernelRuleNames();

}  // namespace optri
