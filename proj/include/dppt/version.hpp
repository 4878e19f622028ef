#pragma once

namespace dppt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dppt
