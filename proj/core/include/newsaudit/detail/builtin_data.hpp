#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace newsaudit::detail {

// Access to data files compiled into the library (lexicons/*, templates/*).
// Names are paths relative to core/data, e.g. "lexicons/stopwords.txt".
std::optional<std::string_view> builtin_file(std::string_view name);
std::vector<std::string_view> builtin_file_names();

}  // namespace newsaudit::detail
