#ifndef DEBRISK_CSV_HPP
#define DEBRISK_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "debrisk/types.hpp"

namespace debrisk {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Strict double parser; the whole token must be consumed.
double parse_double(const std::string& token, const std::string& context);
long parse_long(const std::string& token, const std::string& context);

std::vector<std::string> split_csv_line(const std::string& line);

// Dataset file: header row, then per row the 6 feature columns followed by
// (lon_i, lat_i, vel_i) for fragment ids 1..7. UTF-8, '.' decimal separator.
void write_dataset_csv(std::ostream& out, const Dataset& d);
void write_dataset_csv(const std::string& path, const Dataset& d);
Dataset read_dataset_csv(std::istream& in, const std::string& name = "<stream>");
Dataset read_dataset_csv(const std::string& path);

} // namespace debrisk

#endif
