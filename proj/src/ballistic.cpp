#include "debrisk/ballistic.hpp"

#include <cmath>
#include <string>

#include "debrisk/errors.hpp"
#include "debrisk/rng.hpp"

namespace debrisk {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

struct State {
    Vec3 r; // ECEF position, m
    Vec3 v; // ECEF velocity, m/s
};

// Local east/north/up basis at geocentric (lon, lat), radians.
struct EnuBasis {
    Vec3 east, north, up;
};

EnuBasis enu_at(double lon, double lat) {
    const double sl = std::sin(lon), cl = std::cos(lon);
    const double sp = std::sin(lat), cp = std::cos(lat);
    EnuBasis b;
    b.east = {-sl, cl, 0.0};
    b.north = {-sp * cl, -sp * sl, cp};
    b.up = {cp * cl, cp * sl, sp};
    return b;
}

struct Derivative {
    Vec3 dr, dv;
};

// Point-mass dynamics: inverse-square gravity toward the center plus
// constant-Cd drag against the exponential atmosphere.
Derivative rhs(const State& s, double beta, const BallisticConfig& cfg) {
    const double r = norm(s.r);
    const double gr = cfg.gravity * (cfg.earth_radius / r) * (cfg.earth_radius / r);
    const double h = r - cfg.earth_radius;
    const double rho = cfg.sea_level_density * std::exp(-h / cfg.atmosphere_scale_height);
    const double speed = norm(s.v);
    const double drag = beta * rho * speed; // deceleration per unit velocity
    Derivative d;
    d.dr = s.v;
    d.dv = (-gr / r) * s.r + (-drag) * s.v;
    return d;
}

State rk4_step(const State& s, double dt, double beta, const BallisticConfig& cfg) {
    const Derivative k1 = rhs(s, beta, cfg);
    const Derivative k2 = rhs({s.r + (0.5 * dt) * k1.dr, s.v + (0.5 * dt) * k1.dv}, beta, cfg);
    const Derivative k3 = rhs({s.r + (0.5 * dt) * k2.dr, s.v + (0.5 * dt) * k2.dv}, beta, cfg);
    const Derivative k4 = rhs({s.r + dt * k3.dr, s.v + dt * k3.dv}, beta, cfg);
    State out;
    out.r = s.r + (dt / 6.0) * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    out.v = s.v + (dt / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    return out;
}

double latitude_of(Vec3 r) { return std::asin(r.z / norm(r)); }
double longitude_of(Vec3 r) { return std::atan2(r.y, r.x); }

// Folds the trajectory back toward the equator when it crosses the
// inclination cap: the position latitude is reflected about the cap and the
// meridional velocity component is negated, which is how the ground track of
// an orbit behaves at its turning latitude. Radius and speed are preserved.
void fold_at_cap(State& s, double cap_rad) {
    double lat = latitude_of(s.r);
    if (std::abs(lat) <= cap_rad) return;
    const double lon = longitude_of(s.r);
    const double radius = norm(s.r);
    const double folded = lat > 0.0 ? 2.0 * cap_rad - lat : -2.0 * cap_rad - lat;

    const EnuBasis old_basis = enu_at(lon, lat);
    const double ve = s.v.x * old_basis.east.x + s.v.y * old_basis.east.y;
    const double vn =
        s.v.x * old_basis.north.x + s.v.y * old_basis.north.y + s.v.z * old_basis.north.z;
    const double vu = s.v.x * old_basis.up.x + s.v.y * old_basis.up.y + s.v.z * old_basis.up.z;

    const EnuBasis nb = enu_at(lon, folded);
    s.r = radius * nb.up;
    s.v = ve * nb.east + (-vn) * nb.north + vu * nb.up;
}

double fold_latitude(double lat_deg, double cap_deg) {
    while (std::abs(lat_deg) > cap_deg) {
        lat_deg = lat_deg > 0.0 ? 2.0 * cap_deg - lat_deg : -2.0 * cap_deg - lat_deg;
    }
    return lat_deg;
}

} // namespace

void BallisticConfig::validate() const {
    for (double cd : drag_coefficients)
        if (!(cd > 0.0)) throw RangeError("drag_coefficients", "must be positive");
    if (!(atmosphere_scale_height > 0.0))
        throw RangeError("atmosphere_scale_height", "must be positive");
    if (!(sea_level_density > 0.0)) throw RangeError("sea_level_density", "must be positive");
    if (!(earth_radius > 0.0)) throw RangeError("earth_radius", "must be positive");
    if (!(gravity > 0.0)) throw RangeError("gravity", "must be positive");
    if (!(integration_step > 0.0)) throw RangeError("integration_step", "must be positive");
    if (!(orbital_inclination_cap > 0.0))
        throw RangeError("orbital_inclination_cap", "must be positive");
    if (!(entry_tilt_scale > 0.0)) throw RangeError("entry_tilt_scale", "must be positive");
    if (max_steps <= 0) throw RangeError("max_steps", "must be positive");
}

LabelVector simulate_landing(const FeatureVector& x, const FragmentSpec& f,
                             const BallisticConfig& cfg) {
    cfg.validate();
    const double lon0 = x.origin_lon * kDegToRad;
    const double lat0 = x.origin_lat * kDegToRad;
    const double az = x.azimuth * kDegToRad;
    // The trajectory inclination measures the tilt of the entry velocity off
    // the local vertical (negative while descending), scaled by
    // entry_tilt_scale, so the flight-path angle from the horizon is
    // -(90 + entry_tilt_scale * inclination) degrees.
    const double gamma =
        (-90.0 - cfg.entry_tilt_scale * x.initial_trajectory_inclination) * kDegToRad;
    const double cap_rad = cfg.orbital_inclination_cap * kDegToRad;

    const EnuBasis basis = enu_at(lon0, lat0);
    State s;
    s.r = (cfg.earth_radius + x.initial_altitude) * basis.up;
    const double vh = x.initial_velocity * std::cos(gamma);
    const double vu = x.initial_velocity * std::sin(gamma);
    s.v = (vh * std::sin(az)) * basis.east + (vh * std::cos(az)) * basis.north + vu * basis.up;

    // beta * rho * |v| is the drag deceleration magnitude per unit speed.
    const double beta = 0.5 * cfg.drag_for(f.geometry_class) * f.cross_section_area / f.mass;

    double h_prev = x.initial_altitude;
    State prev = s;
    for (long step = 0; step < cfg.max_steps; ++step) {
        State next = rk4_step(prev, cfg.integration_step, beta, cfg);
        fold_at_cap(next, cap_rad);
        const double h_next = norm(next.r) - cfg.earth_radius;
        if (h_next <= 0.0) {
            // Linear interpolation to the ground crossing inside the step.
            const double t = h_prev <= 0.0 ? 0.0 : h_prev / (h_prev - h_next);
            const State hit{prev.r + t * (next.r + (-1.0) * prev.r),
                            prev.v + t * (next.v + (-1.0) * prev.v)};
            LabelVector out;
            out.landing_lon = normalize_lon(longitude_of(hit.r) * kRadToDeg);
            out.landing_lat =
                fold_latitude(latitude_of(hit.r) * kRadToDeg, cfg.orbital_inclination_cap);
            out.landing_velocity = norm(hit.v);
            return out;
        }
        prev = next;
        h_prev = h_next;
    }
    throw NoImpactError("no ground intersection within " + std::to_string(cfg.max_steps) +
                        " steps");
}

Dataset generate_dataset(std::size_t n, std::uint64_t seed, const BallisticConfig& cfg,
                         const std::vector<FragmentSpec>& fragments) {
    if (n < 10) throw TooFewRowsError("generate_dataset needs n >= 10");
    if (fragments.empty()) throw DomainError("generate_dataset: fragment list is empty");
    cfg.validate();

    Dataset ds;
    ds.rows.resize(n);
    constexpr int kMaxAttempts = 100;

    for (std::size_t i = 0; i < n; ++i) {
        DataRow row;
        bool done = false;
        for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i),
                             static_cast<std::uint64_t>(attempt)));
            row.x.origin_lon = rng.uniform(-180.0, 180.0);
            row.x.origin_lat = rng.uniform(-42.0, 42.0);
            row.x.azimuth = rng.uniform(0.0, 360.0);
            row.x.initial_altitude = rng.uniform(80000.0, 120000.0);
            row.x.initial_velocity = rng.uniform(6000.0, 8000.0);
            row.x.initial_trajectory_inclination = rng.uniform(-5.0, -0.5);
            try {
                for (std::size_t fi = 0; fi < fragments.size() &&
                                         fi < static_cast<std::size_t>(kFragmentCount);
                     ++fi) {
                    const LabelVector lab = simulate_landing(row.x, fragments[fi], cfg);
                    row.labels[fi] = lab;
                }
                done = true;
            } catch (const NoImpactError&) {
                // redraw this row with the next attempt counter
            }
        }
        if (!done)
            throw NoImpactError("row " + std::to_string(i) + " failed " +
                                std::to_string(kMaxAttempts) + " attempts");
        ds.rows[i] = row;
    }
    return ds;
}

} // namespace debrisk
