#ifndef DEBRISK_TYPES_HPP
#define DEBRISK_TYPES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace debrisk {

constexpr int kFragmentCount = 7;
constexpr int kFeatureCount = 6;

// Canonical feature column names, in dataset column order.
extern const std::array<const char*, kFeatureCount> kFeatureNames;

// Entry state of the parent vehicle, expressed in the ground coordinate
// system of the breakup point. Angles in degrees, lengths in meters,
// speeds in m/s.
struct FeatureVector {
    double origin_lon = 0.0;
    double origin_lat = 0.0;
    double azimuth = 0.0; // clockwise from north, [0, 360)
    double initial_altitude = 0.0;
    double initial_velocity = 0.0;
    double initial_trajectory_inclination = 0.0; // negative = descending

    std::array<double, kFeatureCount> to_array() const {
        return {origin_lon, origin_lat, azimuth, initial_altitude,
                initial_velocity, initial_trajectory_inclination};
    }
    static FeatureVector from_array(const std::array<double, kFeatureCount>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

// Ground impact state of one fragment.
struct LabelVector {
    double landing_lon = 0.0;
    double landing_lat = 0.0;
    double landing_velocity = 0.0;
};

// One (entry state, fragment) training pair.
struct Sample {
    FeatureVector x;
    LabelVector y;
    int fragment_id = 1; // 1..7
};

// One dataset row: entry state plus the landing label of every fragment.
struct DataRow {
    FeatureVector x;
    std::array<LabelVector, kFragmentCount> labels;
};

struct Dataset {
    std::vector<DataRow> rows;
    std::uint64_t split_seed = 0;
    double train_fraction = 0.7;

    Sample sample(std::size_t row, int fragment_id) const {
        return {rows[row].x, rows[row].labels[fragment_id - 1], fragment_id};
    }
};

enum class GeometryClass {
    BallBlock,    // block: round ball
    CuboidBlock,  // block: cuboid
    Flake,
    Rhabditiform5,  // rod, l = 5a
    Rhabditiform10, // rod, l = 10a
};

const char* to_string(GeometryClass g);
GeometryClass geometry_class_from_string(const std::string& s);

// One debris group: a simple geometric primitive standing in for a class of
// real fragments.
struct FragmentSpec {
    int id = 0;
    GeometryClass geometry_class = GeometryClass::BallBlock;
    double scale = 0.0;              // characteristic length, meters
    double mass = 0.0;               // kg
    double cross_section_area = 0.0; // m^2
};

// Hyperparameters shared by the three learners. Defaults are the values the
// models are tuned with; see config.hpp for the file keys.
struct ModelHyperparams {
    // SVR
    double svr_c = 6.13;
    double svr_epsilon = 5.0;
    double svr_sigma = 0.0; // RBF width; 0 = median pairwise distance of training features
    // DTR
    int dtr_max_depth = 5;  // <= 0 means unbounded
    bool dtr_prune = false; // post-growth pessimistic-error pruning
    // MLP
    std::vector<int> mlp_hidden_sizes = {64};
    double mlp_alpha = 1e-5; // L2 penalty
    int mlp_max_iter = 500;
    double mlp_learning_rate = 1e-3;
    double mlp_momentum = 0.9;
};

// Normalizes a longitude to [-180, 180).
double normalize_lon(double lon);

// Returns the sample unchanged if every field is inside its documented
// range and finite; throws RangeError naming the offending field otherwise.
const Sample& validate_sample(const Sample& s);

// Target selector used throughout the pipeline.
enum class Target { Lon, Lat, Vel };
const char* to_string(Target t);
Target target_from_string(const std::string& s);
double target_of(const LabelVector& y, Target t);

} // namespace debrisk

#endif
