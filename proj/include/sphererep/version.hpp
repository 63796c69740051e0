#pragma once

namespace sphererep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sphererep
