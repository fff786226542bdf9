#pragma once

namespace patree {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace patree
