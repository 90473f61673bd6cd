#include "debrisk/scaler.hpp"

#include <cmath>

#include "debrisk/errors.hpp"

namespace debrisk {

AffineScaler AffineScaler::fit(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DomainError("scaler needs at least one row");
    const std::size_t d = rows.front().size();
    AffineScaler s;
    s.mean.assign(d, 0.0);
    s.std_dev.assign(d, 1.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) s.mean[j] /= static_cast<double>(rows.size());
    std::vector<double> var(d, 0.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) {
            const double c = row[j] - s.mean[j];
            var[j] += c * c;
        }
    for (std::size_t j = 0; j < d; ++j) {
        var[j] /= static_cast<double>(rows.size());
        s.std_dev[j] = var[j] > 0.0 ? std::sqrt(var[j]) : 1.0;
    }
    return s;
}

AffineScaler AffineScaler::fit_single(const std::vector<double>& values) {
    std::vector<std::vector<double>> rows;
    rows.reserve(values.size());
    for (double v : values) rows.push_back({v});
    return fit(rows);
}

std::vector<double> AffineScaler::apply(const std::vector<double>& row) const {
    std::vector<double> out(row);
    apply_in_place(out);
    return out;
}

void AffineScaler::apply_in_place(std::vector<double>& row) const {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = (row[j] - mean[j]) / std_dev[j];
}

double AffineScaler::apply_single(double v, std::size_t col) const {
    return (v - mean[col]) / std_dev[col];
}

double AffineScaler::invert_single(double v, std::size_t col) const {
    return v * std_dev[col] + mean[col];
}

} // namespace debrisk
