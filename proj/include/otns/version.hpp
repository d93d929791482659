#pragma once

namespace otns {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace otns
