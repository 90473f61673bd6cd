#ifndef DEBRISK_SVR_HPP
#define DEBRISK_SVR_HPP

#include <vector>

#include "debrisk/scaler.hpp"
#include "debrisk/types.hpp"

namespace debrisk {

// Kernel support-vector regression, f(x) = sum_i w_i K(x_i, x) + b with an
// RBF kernel K(x, x') = exp(-|x - x'|^2 / (2 sigma^2)). Dual weights obey
// |w_i| <= c and sum to zero. Feature rows are stored standardized.
struct SvrModel {
    std::vector<std::vector<double>> support_vectors; // standardized rows
    std::vector<double> dual_weights;                 // alpha_i - alpha*_i, nonzero only
    double bias = 0.0;
    double sigma = 1.0;
    double c = 6.13;
    double epsilon = 5.0;
    AffineScaler feature_scaler;

    double predict(const std::vector<double>& x) const;
    double predict(const FeatureVector& x) const;
};

double rbf_kernel(const std::vector<double>& a, const std::vector<double>& b, double sigma);

// Median pairwise Euclidean distance over rows; the default RBF width.
double median_pairwise_distance(const std::vector<std::vector<double>>& rows);

// Fits the epsilon-insensitive dual with an SMO-style two-coordinate ascent
// (maximal violating pair). Epsilon and c act in original target units;
// features are standardized internally. Throws ConvergenceError if the KKT
// gap cannot be brought under 1e-3.
SvrModel svr_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const ModelHyperparams& hp);

inline double svr_predict(const SvrModel& m, const std::vector<double>& x) {
    return m.predict(x);
}
inline double svr_predict(const SvrModel& m, const FeatureVector& x) {
    return m.predict(x);
}

} // namespace debrisk

#endif
