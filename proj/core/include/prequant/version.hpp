#pragma once

namespace prequant {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace prequant
