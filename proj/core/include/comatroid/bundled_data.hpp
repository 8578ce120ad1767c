#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace comatroid {

/// Text of a data file from core/data/ (name without extension), compiled in.
std::optional<std::string_view> bundled_data(std::string_view name);
std::vector<std::string_view> bundled_data_names();

}  // namespace comatroid
