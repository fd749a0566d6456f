#pragma once

namespace occin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace occin
