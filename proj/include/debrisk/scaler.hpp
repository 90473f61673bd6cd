#ifndef DEBRISK_SCALER_HPP
#define DEBRISK_SCALER_HPP

#include <cstddef>
#include <vector>

namespace debrisk {

// Per-column affine transform to zero mean / unit variance. Columns with
// zero variance keep scale 1 so the transform stays invertible.
struct AffineScaler {
    std::vector<double> mean;
    std::vector<double> std_dev;

    static AffineScaler fit(const std::vector<std::vector<double>>& rows);
    static AffineScaler fit_single(const std::vector<double>& values);

    std::vector<double> apply(const std::vector<double>& row) const;
    void apply_in_place(std::vector<double>& row) const;
    double apply_single(double v, std::size_t col = 0) const;
    double invert_single(double v, std::size_t col = 0) const;
};

} // namespace debrisk

#endif
