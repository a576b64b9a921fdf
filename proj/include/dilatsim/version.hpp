#pragma once

namespace dilatsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace dilatsim
