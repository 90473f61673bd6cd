#include "debrisk/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "debrisk/dtr.hpp"
#include "debrisk/errors.hpp"

namespace debrisk {

double mse(const std::vector<double>& y, const std::vector<double>& yhat) {
    if (y.size() != yhat.size() || y.empty())
        throw LengthMismatchError("mse needs equal nonzero lengths");
    long double acc = 0.0L;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const long double d = y[i] - yhat[i];
        acc += d * d;
    }
    return static_cast<double>(acc / static_cast<long double>(y.size()));
}

double r2_score(const std::vector<double>& y, const std::vector<double>& yhat) {
    if (y.size() != yhat.size()) throw LengthMismatchError("r2_score needs equal lengths");
    if (y.size() < 2) throw LengthMismatchError("r2_score needs at least 2 points");
    long double mean = 0.0L;
    for (double v : y) mean += v;
    mean /= static_cast<long double>(y.size());
    long double ss_res = 0.0L, ss_tot = 0.0L;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const long double r = y[i] - yhat[i];
        const long double t = y[i] - mean;
        ss_res += r * r;
        ss_tot += t * t;
    }
    if (ss_tot == 0.0L) throw DegenerateTargetError("r2_score: target has zero variance");
    return static_cast<double>(1.0L - ss_res / ss_tot);
}

RfeResult rfe_select(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                     std::size_t k_features, const ModelHyperparams& hp) {
    if (X.empty()) throw DomainError("rfe_select: empty data");
    const std::size_t n_features = X.front().size();
    if (k_features < 1 || k_features > n_features)
        throw RangeError("k_features", "must be in [1, number of features]");

    std::vector<std::size_t> active(n_features);
    for (std::size_t j = 0; j < n_features; ++j) active[j] = j;

    // Run the elimination all the way down so the full importance ranking is
    // reported even when k_features keeps everything.
    RfeResult res;
    while (active.size() > 1) {
        std::vector<std::vector<double>> Xa(X.size(), std::vector<double>(active.size()));
        for (std::size_t i = 0; i < X.size(); ++i)
            for (std::size_t j = 0; j < active.size(); ++j) Xa[i][j] = X[i][active[j]];
        const auto tree = dtr_grow(Xa, y, hp.dtr_max_depth);
        const auto gains = dtr_split_gains(*tree, active.size());
        std::size_t worst = 0;
        for (std::size_t j = 1; j < active.size(); ++j)
            if (gains[j] < gains[worst]) worst = j; // ties keep the lowest index
        res.elimination_order.push_back(active[worst]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    res.elimination_order.push_back(active.front());

    res.selected.assign(res.elimination_order.end() - static_cast<std::ptrdiff_t>(k_features),
                        res.elimination_order.end());
    std::sort(res.selected.begin(), res.selected.end());
    return res;
}

} // namespace debrisk
