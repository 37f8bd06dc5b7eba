#pragma once

#include <string_view>

namespace newsaudit {

// Tool version embedded in every artifact for provenance.
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace newsaudit
