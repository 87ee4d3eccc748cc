#pragma once

namespace oposhg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace oposhg
