#pragma once

namespace strongties {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace strongties
