#pragma once

namespace specgrowth {
inline constexpr const char* kVersion = "0.1.0";
}
