#pragma once

// Contour CSV exchange and JSON check reports.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lemni/tracer.hpp"

namespace lemni {

/// One `x,y` pair per line, a blank line between contours. Closed contours
/// repeat their first point at the end. Numbers use the shortest decimal that
/// reads back to the same double.
std::string contours_to_csv(const std::vector<Contour>& contours);

/// Inverse of contours_to_csv. Residuals are not stored and read back as 0.
/// Throws InvalidArgument on malformed lines.
std::vector<Contour> contours_from_csv(std::string_view text);

/// {"config": ..., "contours": [[[x, y], ...], ...], "checks": {name: residual}}
nlohmann::json make_report(const nlohmann::json& config, const std::vector<Contour>& contours,
                           const std::map<std::string, double>& checks);

}  // namespace lemni
