#pragma once

namespace oudesign {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace oudesign
