#pragma once

namespace optri {

inline constexpr const char* kToolName = "optri";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace optri
