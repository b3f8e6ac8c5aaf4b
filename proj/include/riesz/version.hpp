#pragma once

namespace riesz {

inline constexpr const char* kToolkitName = "rieszlab";
inline constexpr const char* kVersion = "0.2.0";

} // namespace riesz
