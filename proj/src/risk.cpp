#include "debrisk/risk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <unordered_map>

#include "debrisk/csv.hpp"
#include "debrisk/errors.hpp"

namespace debrisk {

namespace {
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
} // namespace

const char* to_string(DangerLevel level) {
    switch (level) {
        case DangerLevel::Negligible: return "negligible";
        case DangerLevel::Low: return "low";
        case DangerLevel::Medium: return "medium";
        case DangerLevel::High: return "high";
        case DangerLevel::VeryHigh: return "very_high";
    }
    return "unknown";
}

double haversine_km(double lon1, double lat1, double lon2, double lat2) {
    const double phi1 = lat1 * kDegToRad, phi2 = lat2 * kDegToRad;
    const double dphi = (lat2 - lat1) * kDegToRad;
    const double dlam = (lon2 - lon1) * kDegToRad;
    const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2) * std::sin(dlam / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

const GeoCell& nearest_cell(double lon, double lat, const std::vector<GeoCell>& grid) {
    if (grid.empty()) throw EmptyGridError("nearest_cell: empty grid");
    const GeoCell* best = &grid.front();
    double best_d = haversine_km(lon, lat, best->centroid_lon, best->centroid_lat);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double d = haversine_km(lon, lat, grid[i].centroid_lon, grid[i].centroid_lat);
        if (d < best_d || (d == best_d && grid[i].admin_id < best->admin_id)) {
            best = &grid[i];
            best_d = d;
        }
    }
    return *best;
}

double kinetic_energy(double mass_kg, double v_mps) {
    if (mass_kg <= 0.0) throw DomainError("kinetic_energy: mass must be positive");
    if (v_mps < 0.0) throw DomainError("kinetic_energy: speed must be nonnegative");
    return 0.5 * mass_kg * v_mps * v_mps;
}

double casualty_area(const std::vector<double>& fragment_areas, double a_h) {
    double total = 0.0;
    for (double a : fragment_areas) {
        if (a < 0.0) throw DomainError("casualty_area: negative fragment area");
        const double s = std::sqrt(a_h) + std::sqrt(a);
        total += s * s;
    }
    return total;
}

double reentry_risk(double area, double rho, double u, double ke) {
    if (area < 0.0 || rho < 0.0 || u < 0.0 || ke < 0.0)
        throw DomainError("reentry_risk: inputs must be nonnegative");
    return area * rho * u * ke;
}

std::vector<double> normalize_risks(const std::vector<double>& raw) {
    if (raw.empty()) return {};
    const auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
    if (*mx == *mn) {
        std::cerr << "warning: degenerate risk range (all values " << *mn
                  << "), normalizing to 0\n";
        return std::vector<double>(raw.size(), 0.0);
    }
    const double k = 1.0 / (*mx - *mn);
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = k * (raw[i] - *mn);
    return out;
}

DangerLevel danger_level(double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw RangeError("normalized_risk", "must be in [0, 1]");
    if (w < 0.04) return DangerLevel::Negligible;
    if (w < 0.16) return DangerLevel::Low;
    if (w < 0.36) return DangerLevel::Medium;
    if (w < 0.64) return DangerLevel::High;
    return DangerLevel::VeryHigh;
}

std::vector<RiskReport> assess(const std::vector<FragmentSpec>& fragments,
                               const std::vector<LabelVector>& landings,
                               const std::vector<GeoCell>& grid,
                               const std::vector<GdpRecord>& gdp) {
    if (fragments.size() != landings.size())
        throw LengthMismatchError("assess: fragments and landings must align");
    if (grid.empty()) throw EmptyGridError("assess: empty grid");

    std::unordered_map<std::string, double> gdp_by_admin;
    for (const auto& rec : gdp) gdp_by_admin.emplace(rec.admin_id, rec.gdp);

    std::vector<RiskReport> reports(fragments.size());
    std::vector<double> raw(fragments.size());
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        RiskReport& r = reports[i];
        r.fragment_id = fragments[i].id;
        r.landing = landings[i];
        const GeoCell& cell = nearest_cell(landings[i].landing_lon, landings[i].landing_lat, grid);
        const auto it = gdp_by_admin.find(cell.admin_id);
        if (it == gdp_by_admin.end()) throw MissingGdpError(cell.admin_id);
        r.admin_id = cell.admin_id;
        r.rho = cell.population_density;
        r.u = it->second;
        r.area = fragments[i].cross_section_area;
        const double s = std::sqrt(kHumanArea) + std::sqrt(r.area);
        r.casualty_area_term = s * s;
        r.ke = kinetic_energy(fragments[i].mass, landings[i].landing_velocity);
        r.raw_risk = reentry_risk(r.area, r.rho, r.u, r.ke);
        raw[i] = r.raw_risk;
    }
    const std::vector<double> norm = normalize_risks(raw);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        reports[i].normalized_risk = norm[i];
        reports[i].level = danger_level(norm[i]);
    }
    return reports;
}

std::vector<GeoCell> read_grid_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    std::vector<GeoCell> grid;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (f.size() != 4) throw ParseError(ctx + ": expected 4 columns");
        GeoCell c;
        c.admin_id = f[0];
        c.centroid_lon = parse_double(f[1], ctx);
        c.centroid_lat = parse_double(f[2], ctx);
        c.population_density = parse_double(f[3], ctx);
        if (c.population_density < 0)
            throw ParseError(ctx + ": population density must be nonnegative");
        grid.push_back(std::move(c));
    }
    return grid;
}

std::vector<GdpRecord> read_gdp_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    std::vector<GdpRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (f.size() != 2) throw ParseError(ctx + ": expected 2 columns");
        GdpRecord r;
        r.admin_id = f[0];
        r.gdp = parse_double(f[1], ctx);
        if (r.gdp < 0) throw ParseError(ctx + ": gdp must be nonnegative");
        out.push_back(std::move(r));
    }
    return out;
}

void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& reports) {
    out << "fragment_id,landing_lon,landing_lat,landing_velocity,admin_id,ke_j,"
           "pop_density_per_km2,gdp,area_m2,casualty_area_m2,raw_risk,normalized_risk,level\n";
    for (const auto& r : reports) {
        out << r.fragment_id << ',' << format_double(r.landing.landing_lon) << ','
            << format_double(r.landing.landing_lat) << ','
            << format_double(r.landing.landing_velocity) << ',' << r.admin_id << ','
            << format_double(r.ke) << ',' << format_double(r.rho) << ',' << format_double(r.u)
            << ',' << format_double(r.area) << ',' << format_double(r.casualty_area_term) << ','
            << format_double(r.raw_risk) << ',' << format_double(r.normalized_risk) << ','
            << to_string(r.level) << '\n';
    }
}

void write_risk_csv(const std::string& path, const std::vector<RiskReport>& reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    write_risk_csv(out, reports);
    if (!out) throw ParseError("write failed: " + path);
}

} // namespace debrisk
