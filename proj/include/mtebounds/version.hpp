#pragma once

namespace mtebounds {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputSchema = "mte-bounds/1";

}  // namespace mtebounds
