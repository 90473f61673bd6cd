#ifndef DEBRISK_METRICS_HPP
#define DEBRISK_METRICS_HPP

#include <cstddef>
#include <vector>

#include "debrisk/types.hpp"

namespace debrisk {

// Per-(model, target, fragment) evaluation summary.
struct EvalReport {
    double r2 = 0.0;
    double mse = 0.0;
    double mean_abs_error_lon = 0.0; // degrees; only for lon targets
    double mean_abs_error_lat = 0.0; // degrees; only for lat targets
    double mean_abs_error_vel = 0.0; // m/s; only for velocity targets
    std::size_t n_test = 0;
};

// Mean squared error. Throws LengthMismatchError on size mismatch or empty
// input.
double mse(const std::vector<double>& y, const std::vector<double>& yhat);

// Coefficient of determination, 1 - SS_res/SS_tot. Throws
// LengthMismatchError on size mismatch or length < 2, DegenerateTargetError
// when all y are identical.
double r2_score(const std::vector<double>& y, const std::vector<double>& yhat);

// Recursive feature elimination driven by depth-capped regression trees.
// Feature importance is the total SSE reduction attributed to splits on each
// feature; the least important feature (ties to the lowest index) is dropped
// each round until k_features remain.
struct RfeResult {
    std::vector<std::size_t> selected;          // surviving indices, ascending
    std::vector<std::size_t> elimination_order; // first dropped ... last dropped
};
RfeResult rfe_select(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                     std::size_t k_features, const ModelHyperparams& hp = {});

} // namespace debrisk

#endif
