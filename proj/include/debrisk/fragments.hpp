#ifndef DEBRISK_FRAGMENTS_HPP
#define DEBRISK_FRAGMENTS_HPP

#include <string>
#include <vector>

#include "debrisk/types.hpp"

namespace debrisk {

// Power-law mass/quantity model for breakup debris: the count of fragments
// of single mass m is n = C * m^-k. C is derived from a total-mass
// constraint over the configured scale groups.
class MassDistribution {
public:
    // Each scale is the characteristic length of one debris group; the group
    // fragment mass is reference_density * scale^3. C is chosen so the
    // summed group masses (count * mass) equal total_mass.
    MassDistribution(double total_mass_kg, std::vector<double> scales_m,
                     double k_exponent = 0.553, double reference_density = 1000.0);

    double total_mass() const { return total_mass_; }
    double k_exponent() const { return k_; }
    double c_coefficient() const { return c_; }
    const std::vector<double>& scales() const { return scales_; }

    double fragment_mass(double scale_m) const;

    struct Group {
        double scale = 0.0;
        double mass = 0.0;       // single-fragment mass, kg
        double count = 0.0;      // n = C * m^-k, fractional
        long count_rounded = 1;  // nearest integer, at least 1
    };
    std::vector<Group> groups() const;

private:
    double total_mass_;
    double k_;
    double density_;
    std::vector<double> scales_;
    double c_;
};

// n = C * m^-k for a single-fragment mass m. Throws DomainError if m <= 0.
double fragment_count(double mass_kg, const MassDistribution& dist);

// The seven-group debris scheme used throughout: masses
// {16.0, 72.7, 65, 225.5, 8.0, 20.7, 108.5} kg with one geometry class and
// scale per group. Cross-section areas follow the projected-area model in
// cross_section_area().
std::vector<FragmentSpec> default_fragment_set();

// Projected cross-section area of a geometry class at a given scale:
// ball pi*r^2, cuboid face a^2, flake a^2, rod l*a with l in {5a, 10a}.
double cross_section_area(GeometryClass g, double scale_m);

// Fragment set file: CSV columns id, geometry_class, scale_m, mass_kg, area_m2.
std::vector<FragmentSpec> read_fragments_csv(const std::string& path);
void write_fragments_csv(const std::string& path, const std::vector<FragmentSpec>& fragments);

} // namespace debrisk

#endif
