#pragma once

namespace peerrank {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace peerrank
