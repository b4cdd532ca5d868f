#pragma once

namespace wkfi {

inline constexpr const char* kToolName = "wkfi";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace wkfi
