#pragma once

namespace geohydro {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace geohydro
