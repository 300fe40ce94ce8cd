#pragma once

namespace fgate {
inline constexpr const char* kVersion = "0.1.0";
}
