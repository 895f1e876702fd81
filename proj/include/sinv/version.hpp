#pragma once

namespace sinv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sinv
