#pragma once

namespace tweetmine {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tweetmine
