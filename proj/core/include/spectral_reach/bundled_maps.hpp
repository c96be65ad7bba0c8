#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace spectral_reach {

/// Maps shipped with the library (data/maps/*.txt and data/continuous/*.json,
/// compiled in at build time). Names are file stems, e.g. "fourroom".
std::optional<std::string_view> bundled_map(std::string_view name);
std::vector<std::string_view> bundled_map_names();

std::optional<std::string_view> bundled_continuous_maze(std::string_view name);
std::vector<std::string_view> bundled_continuous_names();

}  // namespace spectral_reach
