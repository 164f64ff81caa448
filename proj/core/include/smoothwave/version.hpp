#pragma once

namespace smoothwave {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace smoothwave
