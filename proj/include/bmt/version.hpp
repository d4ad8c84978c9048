#pragma once

namespace bmt {

inline constexpr const char* version = "0.1.0";

} // namespace bmt
