#pragma once

namespace tdesign {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tdesign
