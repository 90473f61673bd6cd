#include "debrisk/types.hpp"

#include <cmath>

#include "debrisk/errors.hpp"

namespace debrisk {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "origin_lon_deg",    "origin_lat_deg",     "azimuth_deg",
    "initial_altitude_m", "initial_velocity_mps", "initial_trajectory_inclination_deg"};

const char* to_string(GeometryClass g) {
    switch (g) {
    case GeometryClass::BallBlock: return "ball_block";
    case GeometryClass::CuboidBlock: return "cuboid_block";
    case GeometryClass::Flake: return "flake";
    case GeometryClass::Rhabditiform5: return "rhabditiform_5";
    case GeometryClass::Rhabditiform10: return "rhabditiform_10";
    }
    return "?";
}

GeometryClass geometry_class_from_string(const std::string& s) {
    if (s == "ball_block") return GeometryClass::BallBlock;
    if (s == "cuboid_block") return GeometryClass::CuboidBlock;
    if (s == "flake") return GeometryClass::Flake;
    if (s == "rhabditiform_5") return GeometryClass::Rhabditiform5;
    if (s == "rhabditiform_10") return GeometryClass::Rhabditiform10;
    throw ParseError("unknown geometry class: " + s);
}

double normalize_lon(double lon) {
    double x = std::fmod(lon + 180.0, 360.0);
    if (x < 0.0) x += 360.0;
    return x - 180.0;
}

namespace {

void check_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw RangeError(field, "value is not finite");
}

void check_range(double v, double lo, double hi, const char* field) {
    check_finite(v, field);
    if (v < lo || v > hi)
        throw RangeError(field, "value " + std::to_string(v) + " outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

} // namespace

const Sample& validate_sample(const Sample& s) {
    check_range(s.x.origin_lon, -180.0, 180.0, "origin_lon");
    check_range(s.x.origin_lat, -90.0, 90.0, "origin_lat");
    check_finite(s.x.azimuth, "azimuth");
    if (s.x.azimuth < 0.0 || s.x.azimuth >= 360.0)
        throw RangeError("azimuth", "value outside [0, 360)");
    check_finite(s.x.initial_altitude, "initial_altitude");
    if (!(s.x.initial_altitude > 0.0))
        throw RangeError("initial_altitude", "must be positive");
    check_finite(s.x.initial_velocity, "initial_velocity");
    if (!(s.x.initial_velocity > 0.0))
        throw RangeError("initial_velocity", "must be positive");
    check_finite(s.x.initial_trajectory_inclination, "initial_trajectory_inclination");

    check_range(s.y.landing_lon, -180.0, 180.0, "landing_lon");
    check_range(s.y.landing_lat, -90.0, 90.0, "landing_lat");
    check_finite(s.y.landing_velocity, "landing_velocity");
    if (s.y.landing_velocity < 0.0)
        throw RangeError("landing_velocity", "must be nonnegative");

    if (s.fragment_id < 1 || s.fragment_id > kFragmentCount)
        throw RangeError("fragment_id", "must be in 1..7");
    return s;
}

const char* to_string(Target t) {
    switch (t) {
    case Target::Lon: return "lon";
    case Target::Lat: return "lat";
    case Target::Vel: return "vel";
    }
    return "?";
}

Target target_from_string(const std::string& s) {
    if (s == "lon") return Target::Lon;
    if (s == "lat") return Target::Lat;
    if (s == "vel") return Target::Vel;
    throw ParseError("unknown target: " + s);
}

double target_of(const LabelVector& y, Target t) {
    switch (t) {
    case Target::Lon: return y.landing_lon;
    case Target::Lat: return y.landing_lat;
    case Target::Vel: return y.landing_velocity;
    }
    return 0.0;
}

} // namespace debrisk
