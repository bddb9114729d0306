#pragma once

namespace rotel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rotel
