#pragma once

namespace nilhom {

inline constexpr const char kVersion[] = "0.1.0";

} // namespace nilhom
