#pragma once

namespace edmrank {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace edmrank
