#pragma once

namespace ellsieve {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ellsieve
