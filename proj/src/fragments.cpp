#include "debrisk/fragments.hpp"

#include <cmath>
#include <fstream>

#include "debrisk/csv.hpp"
#include "debrisk/errors.hpp"

namespace debrisk {

MassDistribution::MassDistribution(double total_mass_kg, std::vector<double> scales_m,
                                   double k_exponent, double reference_density)
    : total_mass_(total_mass_kg), k_(k_exponent), density_(reference_density),
      scales_(std::move(scales_m)) {
    if (!(total_mass_ > 0.0)) throw DomainError("total mass must be positive");
    if (!(k_ > 0.0)) throw DomainError("k exponent must be positive");
    if (!(density_ > 0.0)) throw DomainError("reference density must be positive");
    if (scales_.empty()) throw DomainError("at least one scale is required");
    double denom = 0.0;
    for (double s : scales_) {
        if (!(s > 0.0)) throw DomainError("scales must be positive");
        denom += std::pow(fragment_mass(s), 1.0 - k_);
    }
    // Sum over groups of count*mass = C * sum m^(1-k) = total mass.
    c_ = total_mass_ / denom;
}

double MassDistribution::fragment_mass(double scale_m) const {
    return density_ * scale_m * scale_m * scale_m;
}

std::vector<MassDistribution::Group> MassDistribution::groups() const {
    std::vector<Group> out;
    out.reserve(scales_.size());
    for (double s : scales_) {
        Group g;
        g.scale = s;
        g.mass = fragment_mass(s);
        g.count = fragment_count(g.mass, *this);
        g.count_rounded = std::max(1L, std::lround(g.count));
        out.push_back(g);
    }
    return out;
}

double fragment_count(double mass_kg, const MassDistribution& dist) {
    if (!(mass_kg > 0.0)) throw DomainError("fragment mass must be positive");
    return dist.c_coefficient() * std::pow(mass_kg, -dist.k_exponent());
}

double cross_section_area(GeometryClass g, double scale_m) {
    if (!(scale_m > 0.0)) throw DomainError("scale must be positive");
    switch (g) {
    case GeometryClass::BallBlock: return M_PI * scale_m * scale_m;
    case GeometryClass::CuboidBlock: return scale_m * scale_m;
    case GeometryClass::Flake: return scale_m * scale_m;
    case GeometryClass::Rhabditiform5: return 5.0 * scale_m * scale_m;
    case GeometryClass::Rhabditiform10: return 10.0 * scale_m * scale_m;
    }
    throw DomainError("unknown geometry class");
}

std::vector<FragmentSpec> default_fragment_set() {
    struct Row {
        int id;
        GeometryClass g;
        double scale;
        double mass;
    };
    static const Row rows[kFragmentCount] = {
        {1, GeometryClass::BallBlock, 0.20, 16.0},
        {2, GeometryClass::CuboidBlock, 0.45, 72.7},
        {3, GeometryClass::Flake, 0.60, 65.0},
        {4, GeometryClass::BallBlock, 0.35, 225.5},
        {5, GeometryClass::Flake, 0.35, 8.0},
        {6, GeometryClass::Rhabditiform5, 0.12, 20.7},
        {7, GeometryClass::Rhabditiform10, 0.15, 108.5},
    };
    std::vector<FragmentSpec> out;
    out.reserve(kFragmentCount);
    for (const Row& r : rows)
        out.push_back({r.id, r.g, r.scale, r.mass, cross_section_area(r.g, r.scale)});
    return out;
}

std::vector<FragmentSpec> read_fragments_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    std::vector<FragmentSpec> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string ctx = path + ":" + std::to_string(lineno);
        const auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw ParseError(ctx + ": expected 5 columns id,geometry_class,scale_m,mass_kg,area_m2");
        FragmentSpec f;
        f.id = static_cast<int>(parse_long(fields[0], ctx));
        f.geometry_class = geometry_class_from_string(fields[1]);
        f.scale = parse_double(fields[2], ctx);
        f.mass = parse_double(fields[3], ctx);
        f.cross_section_area = parse_double(fields[4], ctx);
        if (!(f.mass > 0.0)) throw ParseError(ctx + ": mass must be positive");
        if (!(f.cross_section_area > 0.0)) throw ParseError(ctx + ": area must be positive");
        out.push_back(f);
    }
    return out;
}

void write_fragments_csv(const std::string& path, const std::vector<FragmentSpec>& fragments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << "id,geometry_class,scale_m,mass_kg,area_m2\n";
    for (const FragmentSpec& f : fragments) {
        out << f.id << ',' << to_string(f.geometry_class) << ',' << format_double(f.scale) << ','
            << format_double(f.mass) << ',' << format_double(f.cross_section_area) << '\n';
    }
    if (!out) throw ParseError("write failed: " + path);
}

} // namespace debrisk
