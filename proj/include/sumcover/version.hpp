#pragma once

namespace sumcover {

inline constexpr const char* version_string = "0.1.0";

// Bumped whenever the report layout changes incompatibly.
inline constexpr int report_schema_version = 1;
inline constexpr int instance_schema_version = 1;

}  // namespace sumcover
