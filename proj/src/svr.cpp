#include "debrisk/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "debrisk/errors.hpp"

namespace debrisk {

double rbf_kernel(const std::vector<double>& a, const std::vector<double>& b, double sigma) {
    double sq = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        sq += d * d;
    }
    return std::exp(-sq / (2.0 * sigma * sigma));
}

double median_pairwise_distance(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                const double d = rows[i][k] - rows[j][k];
                sq += d * d;
            }
            dists.push_back(std::sqrt(sq));
        }
    if (dists.empty()) return 1.0;
    const std::size_t mid = dists.size() / 2;
    std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
    double med = dists[mid];
    return med > 0.0 ? med : 1.0;
}

double SvrModel::predict(const std::vector<double>& x) const {
    const std::vector<double> xs = feature_scaler.apply(x);
    double f = bias;
    for (std::size_t i = 0; i < support_vectors.size(); ++i)
        f += dual_weights[i] * rbf_kernel(support_vectors[i], xs, sigma);
    return f;
}

double SvrModel::predict(const FeatureVector& x) const {
    const auto a = x.to_array();
    return predict(std::vector<double>(a.begin(), a.end()));
}

namespace {

// Contract tolerance on the KKT gap; fits failing it raise ConvergenceError.
constexpr double kKktTolerance = 1e-3;

} // namespace

SvrModel svr_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const ModelHyperparams& hp) {
    const std::size_t n = X.size();
    if (n < 2) throw DomainError("svr_fit needs at least 2 rows");
    if (y.size() != n) throw LengthMismatchError("svr_fit: |X| != |y|");
    const double c = hp.svr_c;
    const double eps = hp.svr_epsilon;
    if (!(c > 0.0)) throw DomainError("svr c must be positive");
    if (!(eps > 0.0)) throw DomainError("svr epsilon must be positive");

    SvrModel model;
    model.c = c;
    model.epsilon = eps;
    model.feature_scaler = AffineScaler::fit(X);

    std::vector<std::vector<double>> Xs(X);
    for (auto& row : Xs) model.feature_scaler.apply_in_place(row);
    model.sigma = hp.svr_sigma > 0.0 ? hp.svr_sigma : median_pairwise_distance(Xs);

    // Dense kernel matrix; training sets here are desk scale.
    std::vector<double> K(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        K[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = rbf_kernel(Xs[i], Xs[j], model.sigma);
            K[i * n + j] = k;
            K[j * n + i] = k;
        }
    }

    // Box QP over z = [alpha; alpha*], u = +1 for the first block and -1 for
    // the second. Minimize 1/2 z^T (u u^T . K) z + p^T z subject to
    // u^T z = 0, 0 <= z <= c; the dual weight of row i is z[i] - z[n+i].
    const std::size_t m2 = 2 * n;
    std::vector<double> z(m2, 0.0);
    std::vector<double> grad(m2);
    for (std::size_t s = 0; s < n; ++s) grad[s] = eps - y[s];
    for (std::size_t s = n; s < m2; ++s) grad[s] = eps + y[s - n];
    auto u_of = [n](std::size_t s) { return s < n ? 1.0 : -1.0; };

    double yscale = 1.0;
    for (double v : y) yscale = std::max(yscale, std::abs(v));
    const double tol = std::min(kKktTolerance, 1e-6 * yscale);

    const std::size_t max_iter = 200000 + 400 * n;
    double gap = std::numeric_limits<double>::infinity();
    double final_m = 0.0, final_M = 0.0;

    for (std::size_t iter = 0;; ++iter) {
        // Maximal violating pair.
        double best_up = -std::numeric_limits<double>::infinity();
        double best_low = std::numeric_limits<double>::infinity();
        std::size_t i = m2, j = m2;
        for (std::size_t s = 0; s < m2; ++s) {
            const double u = u_of(s);
            const double v = -u * grad[s];
            const bool in_up = (u > 0.0) ? (z[s] < c) : (z[s] > 0.0);
            const bool in_low = (u > 0.0) ? (z[s] > 0.0) : (z[s] < c);
            if (in_up && v > best_up) {
                best_up = v;
                i = s;
            }
            if (in_low && v < best_low) {
                best_low = v;
                j = s;
            }
        }
        gap = best_up - best_low;
        final_m = best_up;
        final_M = best_low;
        if (!(gap > tol) || i == m2 || j == m2) break;
        if (iter >= max_iter) {
            if (gap > kKktTolerance)
                throw ConvergenceError("svr_fit: KKT gap " + std::to_string(gap) +
                                       " after max passes");
            break;
        }

        const double ui = u_of(i), uj = u_of(j);
        const std::size_t ri = i % n, rj = j % n;
        const double denom = K[ri * n + ri] + K[rj * n + rj] - 2.0 * K[ri * n + rj];
        const double slope = ui * grad[i] - uj * grad[j]; // dD/d(delta) at 0, negative here

        // Feasible step interval for delta (z_i moves by ui*delta, z_j by -uj*delta).
        double lo = ui > 0.0 ? -z[i] : z[i] - c;
        double hi = ui > 0.0 ? c - z[i] : z[i];
        lo = std::max(lo, uj > 0.0 ? z[j] - c : -z[j]);
        hi = std::min(hi, uj > 0.0 ? z[j] : c - z[j]);

        double delta;
        if (denom > 1e-12) {
            delta = std::clamp(-slope / denom, lo, hi);
        } else {
            delta = slope < 0.0 ? hi : lo;
        }
        if (delta == 0.0) {
            // Numerically stuck pair; the gap check above decides acceptance.
            if (gap > kKktTolerance)
                throw ConvergenceError("svr_fit: stalled with KKT gap " + std::to_string(gap));
            break;
        }

        z[i] += ui * delta;
        z[j] -= uj * delta;
        z[i] = std::clamp(z[i], 0.0, c);
        z[j] = std::clamp(z[j], 0.0, c);
        const double* Ki = &K[ri * n];
        const double* Kj = &K[rj * n];
        for (std::size_t t = 0; t < n; ++t) {
            const double d = delta * (Ki[t] - Kj[t]);
            grad[t] += d;
            grad[n + t] -= d;
        }
    }

    // Bias from free variables, else the midpoint of the feasible interval.
    double bsum = 0.0;
    std::size_t bcount = 0;
    for (std::size_t s = 0; s < m2; ++s) {
        if (z[s] > 0.0 && z[s] < c) {
            bsum += -u_of(s) * grad[s];
            ++bcount;
        }
    }
    model.bias = bcount > 0 ? bsum / static_cast<double>(bcount) : 0.5 * (final_m + final_M);

    for (std::size_t r = 0; r < n; ++r) {
        const double w = z[r] - z[n + r];
        if (w != 0.0) {
            model.support_vectors.push_back(Xs[r]);
            model.dual_weights.push_back(w);
        }
    }
    return model;
}

} // namespace debrisk
