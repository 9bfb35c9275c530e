#pragma once

namespace ssns {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ssns
