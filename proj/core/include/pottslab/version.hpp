#pragma once

namespace pottslab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pottslab
