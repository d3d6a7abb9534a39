#pragma once

namespace cavarray {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cavarray
