#pragma once

namespace heatlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace heatlab
