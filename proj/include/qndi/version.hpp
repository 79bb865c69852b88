#pragma once

namespace qndi {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace qndi
