#pragma once

namespace eot {

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace eot
