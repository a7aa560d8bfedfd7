#pragma once

namespace itr {

inline constexpr const char* kToolName = "itr";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace itr
