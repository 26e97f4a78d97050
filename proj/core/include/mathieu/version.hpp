#pragma once

namespace mathieu {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mathieu
