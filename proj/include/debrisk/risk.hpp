#ifndef DEBRISK_RISK_HPP
#define DEBRISK_RISK_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "debrisk/types.hpp"

namespace debrisk {

// One population-grid cell: an administrative region reduced to its centroid.
struct GeoCell {
    std::string admin_id;
    double centroid_lon = 0.0;
    double centroid_lat = 0.0;
    double population_density = 0.0; // persons/km^2
};

struct GdpRecord {
    std::string admin_id;
    double gdp = 0.0;
};

enum class DangerLevel { Negligible, Low, Medium, High, VeryHigh };
const char* to_string(DangerLevel level);

struct RiskReport {
    int fragment_id = 0;
    LabelVector landing;
    std::string admin_id;
    double ke = 0.0;                 // J
    double rho = 0.0;                // persons/km^2
    double u = 0.0;                  // GDP, currency units
    double area = 0.0;               // fragment cross section, m^2
    double casualty_area_term = 0.0; // (sqrt(a_h) + sqrt(area))^2, m^2
    double raw_risk = 0.0;
    double normalized_risk = 0.0; // in [0, 1]
    DangerLevel level = DangerLevel::Negligible;
};

// Great-circle distance in km on a sphere of radius 6371 km.
double haversine_km(double lon1, double lat1, double lon2, double lat2);

// Cell nearest to (lon, lat); ties go to the lexicographically lowest
// admin_id. Throws EmptyGridError on an empty grid.
const GeoCell& nearest_cell(double lon, double lat, const std::vector<GeoCell>& grid);

// 0.5 * m * v^2. Throws DomainError when mass <= 0 or v < 0.
double kinetic_energy(double mass_kg, double v_mps);

constexpr double kHumanArea = 0.36; // m^2, ground-projected human cross section

// Total casualty area: sum of (sqrt(a_h) + sqrt(A_i))^2 over fragments.
double casualty_area(const std::vector<double>& fragment_areas, double a_h = kHumanArea);

// E = A * rho * u * KE. Inputs must be nonnegative.
double reentry_risk(double area, double rho, double u, double ke);

// Min-max normalization to [0, 1]. A degenerate list (all values equal,
// including a single element) maps to all zeros with a warning on stderr.
std::vector<double> normalize_risks(const std::vector<double>& raw);

// Bradford intervals, half-open except the last:
// [0,0.04) [0.04,0.16) [0.16,0.36) [0.36,0.64) [0.64,1.0].
// Throws RangeError outside [0, 1].
DangerLevel danger_level(double w);

// Full per-fragment chain: nearest cell, GDP lookup, kinetic energy, raw
// risk, joint normalization, binning. Fragments and landings are aligned by
// index. Throws MissingGdpError when a matched admin_id has no GDP record.
std::vector<RiskReport> assess(const std::vector<FragmentSpec>& fragments,
                               const std::vector<LabelVector>& landings,
                               const std::vector<GeoCell>& grid,
                               const std::vector<GdpRecord>& gdp);

std::vector<GeoCell> read_grid_csv(const std::string& path);
std::vector<GdpRecord> read_gdp_csv(const std::string& path);
void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& reports);
void write_risk_csv(const std::string& path, const std::vector<RiskReport>& reports);

} // namespace debrisk

#endif
