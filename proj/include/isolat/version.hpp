#pragma once

namespace isolat {

inline constexpr const char* kToolName = "isolat";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace isolat
