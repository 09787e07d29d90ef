#pragma once

namespace qsw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsw
