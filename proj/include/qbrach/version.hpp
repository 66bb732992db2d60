#pragma once

namespace qbrach {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qbrach
