#pragma once

#include <string>
#include <string_view>

#include "htlab/series.hpp"
#include "json.hpp"

namespace htlab {

/// Rows "n,re,im" under a header line, one per coefficient, written with
/// 17 significant digits so that parsing restores every double exactly.
std::string to_csv(const PowerSeries& s);
PowerSeries series_from_csv(std::string_view text);

/// [[re, im], ...] indexed by n.
nlohmann::json to_json(const PowerSeries& s);
PowerSeries series_from_json(const nlohmann::json& j);

}  // namespace htlab
