#pragma once

#include <map>
#include <string>
#include <vector>

#include "ast.hpp"
#include "state.hpp"

namespace optri {

// A finite state universe: domain declarations for every variable, plus the
// heap budget and the enumeration cap. Record declarations are bound in from
// the program before any execution.
struct Universe {
  std::vector<std::pair<std::string, Domain>> vars;  // sorted by name
  std::map<std::string, RecordDecl> records;
  long long heapBudget = 0;
  long long enumerationCap = 0;
  std::string hash;  // content hash of the .opu text

  const Domain* find(const std::string& name) const;
};

// Parses the flat JSON object form: every key except "heapBudget" and
// "enumerationCap" maps a variable name to a domain descriptor.
Universe loadUniverse(const std::string& jsonText);

// Copies the program's record declarations into the universe and validates
// that every referenced record type exists.
void bindRecords(Universe& u, const Program& p);

// Number of initial states (saturating).
unsigned long long stateCount(const Universe& u);

// All initial states in documented deterministic order. Throws
// UniverseTooLarge when the product of the domain sizes exceeds the cap.
std::vector<State> enumerateStates(const Universe& u);

// Default (non-enumerated) value of a domain: int lo, ff, {}, nil, defaults.
Value defaultValue(const Domain& d);

std::string fnv1aHex(const std::string& data);

}  // namespace optri
