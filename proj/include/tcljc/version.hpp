#pragma once

namespace tcljc {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace tcljc
