#pragma once

namespace seqsteer {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace seqsteer
