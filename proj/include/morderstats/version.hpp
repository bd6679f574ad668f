#pragma once

namespace morderstats {

inline constexpr const char* version = "0.1.0";

}  // namespace morderstats
