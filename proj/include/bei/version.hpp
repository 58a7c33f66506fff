#pragma once

namespace bei {

inline constexpr const char* kKernelName = "bei";
inline constexpr const char* kKernelVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

} // namespace bei
