#pragma once

namespace fenergy {

inline constexpr const char* kVersion = "1.0.0";

}
