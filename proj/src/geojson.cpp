#include "debrisk/geojson.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "debrisk/errors.hpp"
#include "debrisk/types.hpp"

namespace debrisk {

namespace {

using json = nlohmann::ordered_json;

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kPi = 3.14159265358979323846;
constexpr int kCircleSegments = 64;

// Colors from the innermost ring outward.
const char* const kRingColors[5] = {"red", "orange", "yellow", "blue", "green"};

json circle_ring(double lon, double lat, double radius_km) {
    json ring = json::array();
    const double ang = radius_km / kEarthRadiusKm; // radians of arc
    const double dlat = ang * 180.0 / kPi;
    const double coslat = std::cos(lat * kPi / 180.0);
    const double dlon = coslat > 1e-9 ? dlat / coslat : dlat;
    for (int i = 0; i <= kCircleSegments; ++i) {
        const double t = 2.0 * kPi * i / kCircleSegments;
        const double plon = normalize_lon(lon + dlon * std::sin(t));
        const double plat = lat + dlat * std::cos(t);
        ring.push_back(json::array({plon, plat}));
    }
    return json::array({ring});
}

} // namespace

std::string risk_geojson(const std::vector<RiskReport>& reports) {
    json fc;
    fc["type"] = "FeatureCollection";
    fc["features"] = json::array();
    for (const auto& r : reports) {
        json point;
        point["type"] = "Feature";
        point["geometry"] = {{"type", "Point"},
                             {"coordinates", {r.landing.landing_lon, r.landing.landing_lat}}};
        point["properties"] = {{"fragment_id", r.fragment_id},
                               {"admin_id", r.admin_id},
                               {"normalized_risk", r.normalized_risk},
                               {"level", to_string(r.level)},
                               {"landing_velocity_mps", r.landing.landing_velocity}};
        fc["features"].push_back(point);

        const double outer_km = 10.0 * (static_cast<int>(r.level) + 1);
        for (int j = 1; j <= 5; ++j) {
            json circle;
            circle["type"] = "Feature";
            circle["geometry"] = {
                {"type", "Polygon"},
                {"coordinates",
                 circle_ring(r.landing.landing_lon, r.landing.landing_lat, outer_km * j / 5.0)}};
            circle["properties"] = {{"fragment_id", r.fragment_id},
                                    {"ring", j},
                                    {"radius_km", outer_km * j / 5.0},
                                    {"color", kRingColors[j - 1]}};
            fc["features"].push_back(circle);
        }
    }
    return fc.dump(2) + "\n";
}

void write_risk_geojson(std::ostream& out, const std::vector<RiskReport>& reports) {
    out << risk_geojson(reports);
}

void write_risk_geojson(const std::string& path, const std::vector<RiskReport>& reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    write_risk_geojson(out, reports);
    if (!out) throw ParseError("write failed: " + path);
}

} // namespace debrisk
