#pragma once

namespace extremal {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr unsigned kReportSchema = 1;

}  // namespace extremal
