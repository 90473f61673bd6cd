#include "debrisk/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "debrisk/errors.hpp"

namespace debrisk {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& context) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    // Tolerate a leading '+': from_chars does not accept it.
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError(context + ": invalid number '" + token + "'");
    return v;
}

long parse_long(const std::string& token, const std::string& context) {
    long v = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw ParseError(context + ": invalid integer '" + token + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

void write_dataset_csv(std::ostream& out, const Dataset& d) {
    for (int i = 0; i < kFeatureCount; ++i) {
        if (i) out << ',';
        out << kFeatureNames[i];
    }
    for (int f = 1; f <= kFragmentCount; ++f)
        out << ",lon_" << f << ",lat_" << f << ",vel_" << f;
    out << '\n';
    for (const DataRow& row : d.rows) {
        const auto x = row.x.to_array();
        for (int i = 0; i < kFeatureCount; ++i) {
            if (i) out << ',';
            out << format_double(x[i]);
        }
        for (const LabelVector& y : row.labels) {
            out << ',' << format_double(y.landing_lon) << ',' << format_double(y.landing_lat)
                << ',' << format_double(y.landing_velocity);
        }
        out << '\n';
    }
}

void write_dataset_csv(const std::string& path, const Dataset& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    write_dataset_csv(out, d);
    if (!out) throw ParseError("write failed: " + path);
}

Dataset read_dataset_csv(std::istream& in, const std::string& name) {
    constexpr std::size_t kColumns = kFeatureCount + 3 * kFragmentCount;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name + ": empty file");
    if (split_csv_line(line).size() != kColumns)
        throw ParseError(name + ": header must have " + std::to_string(kColumns) + " columns");

    Dataset d;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        const std::string ctx = name + ":" + std::to_string(lineno);
        if (fields.size() != kColumns)
            throw ParseError(ctx + ": expected " + std::to_string(kColumns) + " columns, got " +
                             std::to_string(fields.size()));
        DataRow row;
        std::array<double, kFeatureCount> x;
        for (int i = 0; i < kFeatureCount; ++i) x[i] = parse_double(fields[i], ctx);
        row.x = FeatureVector::from_array(x);
        for (int f = 0; f < kFragmentCount; ++f) {
            row.labels[f].landing_lon = parse_double(fields[kFeatureCount + 3 * f], ctx);
            row.labels[f].landing_lat = parse_double(fields[kFeatureCount + 3 * f + 1], ctx);
            row.labels[f].landing_velocity = parse_double(fields[kFeatureCount + 3 * f + 2], ctx);
        }
        for (double v : row.x.to_array())
            if (!std::isfinite(v)) throw ParseError(ctx + ": non-finite feature value");
        for (const LabelVector& y : row.labels)
            if (!std::isfinite(y.landing_lon) || !std::isfinite(y.landing_lat) ||
                !std::isfinite(y.landing_velocity))
                throw ParseError(ctx + ": non-finite label value");
        d.rows.push_back(row);
    }
    return d;
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    return read_dataset_csv(in, path);
}

} // namespace debrisk
