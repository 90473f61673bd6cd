#ifndef DEBRISK_BALLISTIC_HPP
#define DEBRISK_BALLISTIC_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "debrisk/types.hpp"

namespace debrisk {

// Physics and integrator settings for the reentry oracle. Spherical
// non-rotating Earth, exponential atmosphere, constant drag coefficient per
// geometry class, fixed-step RK4.
struct BallisticConfig {
    // Cd by geometry class, indexed by static_cast<int>(GeometryClass).
    std::array<double, 5> drag_coefficients = {0.47, 1.05, 1.17, 0.80, 0.80};
    double atmosphere_scale_height = 7200.0; // m
    double sea_level_density = 1.225;        // kg/m^3
    double earth_radius = 6371000.0;         // m
    double gravity = 9.80665;                // m/s^2 at the surface
    double integration_step = 0.1;           // s
    double orbital_inclination_cap = 42.0;   // deg; ground track folds here
    // Degrees of entry tilt off the local vertical per degree of the
    // trajectory-inclination feature; sets how far downrange the corridor
    // spreads the landings.
    double entry_tilt_scale = 14.0;
    long max_steps = 200000;                 // step budget before NoImpact

    double drag_for(GeometryClass g) const {
        return drag_coefficients[static_cast<std::size_t>(g)];
    }
    void validate() const; // throws RangeError on a non-positive field
};

// Integrates one fragment from the breakup state to ground intersection.
// Deterministic; throws NoImpactError when the step budget runs out before
// the altitude reaches zero. The ground track is folded at the inclination
// cap, so landings stay inside the latitude band the entry orbit can reach.
LabelVector simulate_landing(const FeatureVector& x, const FragmentSpec& f,
                             const BallisticConfig& cfg);

// Draws n entry states uniformly from the documented feature ranges and
// labels each with simulate_landing per fragment. Row i depends only on
// (seed, i), so any generation order gives the same dataset. Rows whose
// trajectory exhausts the step budget are redrawn (bounded attempts).
Dataset generate_dataset(std::size_t n, std::uint64_t seed, const BallisticConfig& cfg,
                         const std::vector<FragmentSpec>& fragments);

} // namespace debrisk

#endif
