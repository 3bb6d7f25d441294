#pragma once

#include <string>

#include <json.hpp>

#include "checker.hpp"
#include "kernel.hpp"

namespace optri {

// JSON encodings shared by the CLI and the C API. Keys are emitted in sorted
// order, so equal inputs produce byte-identical documents.

nlohmann::json valueToJson(const Value& v);
nlohmann::json stateToJson(const State& s, const Universe& u);

nlohmann::json verdictReport(const std::string& command, const Verdict& v, const Universe& u,
                             long long fuel);
nlohmann::json poststatesReport(const PostStates& ps, const Universe& u, long long fuel);
nlohmann::json derivationReportJson(const DerivationReport& rep, const Universe& u,
                                    long long fuel);

// Human one-liner for stderr.
std::string verdictSummary(const Verdict& v);
std::string verdictName(Verdict::Status s);
int verdictExitCode(Verdict::Status s);

}  // namespace optri
