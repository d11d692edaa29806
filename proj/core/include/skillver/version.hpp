#pragma once

namespace skillver {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace skillver
