#pragma once

namespace crowdflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace crowdflow
