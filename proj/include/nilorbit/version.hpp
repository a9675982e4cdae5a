#pragma once

namespace nilorbit {
inline constexpr const char* kVersion = "0.1.0";
}
