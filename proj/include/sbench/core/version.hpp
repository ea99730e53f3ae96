#pragma once

#include <string_view>

namespace sbench {

/// Recorded in every manifest; bump when generated bytes change.
inline constexpr std::string_view kGeneratorVersion = "sbench 0.1.0";

}  // namespace sbench
