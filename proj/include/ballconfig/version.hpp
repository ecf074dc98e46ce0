#pragma once

namespace ballconfig {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ballconfig
