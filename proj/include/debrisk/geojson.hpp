#ifndef DEBRISK_GEOJSON_HPP
#define DEBRISK_GEOJSON_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "debrisk/risk.hpp"

namespace debrisk {

// Renders risk reports as a GeoJSON FeatureCollection: one Point per
// fragment plus five concentric circle polygons around it. The outer circle
// radius is 10 km * (level rank + 1); the five rings at radius j/5 of that
// are colored red (innermost) through orange, yellow, blue, green.
std::string risk_geojson(const std::vector<RiskReport>& reports);

void write_risk_geojson(std::ostream& out, const std::vector<RiskReport>& reports);
void write_risk_geojson(const std::string& path, const std::vector<RiskReport>& reports);

} // namespace debrisk

#endif
