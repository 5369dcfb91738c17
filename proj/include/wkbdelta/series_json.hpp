#pragma once

#include <string>

#include <json.hpp>

#include "wkbdelta/delta.hpp"

namespace wkbdelta {

// Lossless JSON form of a RadicalSeries. Every integer is written as a decimal string so
// coefficients of any size survive a round trip through standard JSON readers.
// radical_base / radical_power repeat the radical with the most negative power; the full
// list lives under "radicals".
nlohmann::json series_to_json(const RadicalSeries& series);
RadicalSeries series_from_json(const nlohmann::json& doc);

std::string series_to_json_string(const RadicalSeries& series, int indent = 2);
RadicalSeries series_from_json_string(const std::string& text);

}  // namespace wkbdelta
