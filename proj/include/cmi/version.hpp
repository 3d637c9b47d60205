#pragma once

namespace cmi {

inline constexpr const char* kToolName = "cmi-cli";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace cmi
