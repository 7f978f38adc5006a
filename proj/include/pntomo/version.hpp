#pragma once

namespace pntomo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pntomo
