#pragma once

namespace qwalk {

inline constexpr const char* kToolVersion = "qwalk 0.1.0";

}  // namespace qwalk
