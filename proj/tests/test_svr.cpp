#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "debrisk/errors.hpp"
#include "debrisk/rng.hpp"
#include "debrisk/scaler.hpp"
#include "debrisk/svr.hpp"

using namespace debrisk;

namespace {

// Oracle for the epsilon-insensitive dual on tiny instances:
//   minimize 1/2 b^T K b + eps |b|_1 - y^T b   s.t.  sum b = 0, |b_i| <= C.
// Every sign pattern and every clamp pattern of the support is enumerated;
// each candidate solves an equality-constrained stationarity system and the
// best feasible candidate wins. Exponential, which is fine for n = 5.
struct OracleResult {
    std::vector<double> beta;
    double bias = 0.0;
    double objective = std::numeric_limits<double>::infinity();
};

bool solve_dense(std::vector<std::vector<double>> A, std::vector<double>& b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) < 1e-12) return false;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
    return true;
}

double dual_objective(const std::vector<std::vector<double>>& K, const std::vector<double>& y,
                      double eps, const std::vector<double>& beta) {
    const std::size_t n = y.size();
    double quad = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lin += eps * std::abs(beta[i]) - y[i] * beta[i];
        for (std::size_t j = 0; j < n; ++j) quad += beta[i] * K[i][j] * beta[j];
    }
    return 0.5 * quad + lin;
}

OracleResult oracle_solve(const std::vector<std::vector<double>>& K, const std::vector<double>& y,
                          double c, double eps) {
    const std::size_t n = y.size();
    OracleResult best;
    std::vector<int> sign(n, 0);

    std::size_t n_patterns = 1;
    for (std::size_t i = 0; i < n; ++i) n_patterns *= 3;

    for (std::size_t code = 0; code < n_patterns; ++code) {
        std::size_t rem = code;
        for (std::size_t i = 0; i < n; ++i) {
            sign[i] = static_cast<int>(rem % 3) - 1;
            rem /= 3;
        }
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < n; ++i)
            if (sign[i] != 0) support.push_back(i);

        const std::size_t n_clamp_patterns = std::size_t{1} << support.size();
        for (std::size_t clamp_code = 0; clamp_code < n_clamp_patterns; ++clamp_code) {
            std::vector<double> beta(n, 0.0);
            std::vector<std::size_t> interior;
            double clamped_sum = 0.0;
            for (std::size_t s = 0; s < support.size(); ++s) {
                if (clamp_code & (std::size_t{1} << s)) {
                    beta[support[s]] = sign[support[s]] * c;
                    clamped_sum += beta[support[s]];
                } else {
                    interior.push_back(support[s]);
                }
            }

            if (interior.empty()) {
                if (std::abs(clamped_sum) > 1e-12) continue;
            } else {
                // Stationarity for interior i: (K beta)_i + eps s_i - y_i + mu = 0,
                // plus the sum constraint; unknowns are the interior betas and mu.
                const std::size_t m = interior.size();
                std::vector<std::vector<double>> A(m + 1, std::vector<double>(m + 1, 0.0));
                std::vector<double> rhs(m + 1, 0.0);
                for (std::size_t r = 0; r < m; ++r) {
                    const std::size_t i = interior[r];
                    for (std::size_t s = 0; s < m; ++s) A[r][s] = K[i][interior[s]];
                    A[r][m] = 1.0;
                    double fixed = 0.0;
                    for (std::size_t jj = 0; jj < n; ++jj)
                        if (std::abs(beta[jj]) == c && beta[jj] != 0.0) fixed += K[i][jj] * beta[jj];
                    rhs[r] = y[i] - eps * sign[i] - fixed;
                }
                for (std::size_t s = 0; s < m; ++s) A[m][s] = 1.0;
                rhs[m] = -clamped_sum;
                if (!solve_dense(A, rhs)) continue;

                bool ok = true;
                for (std::size_t r = 0; r < m && ok; ++r) {
                    const double v = rhs[r];
                    const std::size_t i = interior[r];
                    if (sign[i] > 0 && (v < 0.0 || v > c)) ok = false;
                    if (sign[i] < 0 && (v > 0.0 || v < -c)) ok = false;
                    beta[i] = v;
                }
                if (!ok) continue;
            }

            const double obj = dual_objective(K, y, eps, beta);
            if (obj < best.objective - 1e-12) {
                best.objective = obj;
                best.beta = beta;
            }
        }
    }

    // Bias from the KKT interval; interior points pin it, otherwise the
    // feasible window's midpoint is used, matching the production convention.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double kb = 0.0;
        for (std::size_t j = 0; j < n; ++j) kb += K[i][j] * best.beta[j];
        const double g = y[i] - kb;
        const double b = best.beta[i];
        if (b >= c - 1e-9) {
            hi = std::min(hi, g - eps);
        } else if (b > 1e-9) {
            lo = std::max(lo, g - eps);
            hi = std::min(hi, g - eps);
        } else if (b <= -c + 1e-9) {
            lo = std::max(lo, g + eps);
        } else if (b < -1e-9) {
            lo = std::max(lo, g + eps);
            hi = std::min(hi, g + eps);
        } else {
            lo = std::max(lo, g - eps);
            hi = std::min(hi, g + eps);
        }
    }
    best.bias = 0.5 * (lo + hi);
    return best;
}

// Full dual weight vector of a fitted model, indexed like the training rows.
std::vector<double> full_weights(const SvrModel& m, const std::vector<std::vector<double>>& Xs) {
    std::vector<double> w(Xs.size(), 0.0);
    for (std::size_t s = 0; s < m.support_vectors.size(); ++s) {
        bool placed = false;
        for (std::size_t i = 0; i < Xs.size() && !placed; ++i) {
            if (m.support_vectors[s] == Xs[i] && w[i] == 0.0) {
                w[i] = m.dual_weights[s];
                placed = true;
            }
        }
        REQUIRE(placed);
    }
    return w;
}

// KKT gap of the box dual, recomputed from scratch from the weights.
double kkt_gap(const std::vector<std::vector<double>>& K, const std::vector<double>& y, double c,
               double eps, const std::vector<double>& beta) {
    const std::size_t n = y.size();
    double best_up = -std::numeric_limits<double>::infinity();
    double best_low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double kb = 0.0;
        for (std::size_t j = 0; j < n; ++j) kb += K[i][j] * beta[j];
        const double z_a = std::max(beta[i], 0.0);
        const double z_s = std::max(-beta[i], 0.0);
        const double grad_a = kb + eps - y[i];
        const double grad_s = -kb + eps + y[i];
        if (z_a < c) best_up = std::max(best_up, -grad_a);
        if (z_a > 0.0) best_low = std::min(best_low, -grad_a);
        if (z_s > 0.0) best_up = std::max(best_up, grad_s);
        if (z_s < c) best_low = std::min(best_low, grad_s);
    }
    return best_up - best_low;
}

} // namespace

TEST_CASE("five-point instances match the enumerating QP oracle") {
    Rng rng(301);
    const double cs[] = {0.05, 1.0, 10.0};
    const double epss[] = {0.1, 0.5, 2.0};
    int with_clamped = 0, with_interior = 0;

    for (int inst = 0; inst < 18; ++inst) {
        std::vector<std::vector<double>> X(5);
        std::vector<double> y(5);
        for (std::size_t i = 0; i < 5; ++i) {
            X[i] = {static_cast<double>(i) + rng.uniform(-0.3, 0.3)};
            y[i] = 1.5 * X[i][0] + rng.uniform(-0.4, 0.4);
        }
        ModelHyperparams hp;
        hp.svr_c = cs[inst % 3];
        hp.svr_epsilon = epss[(inst / 3) % 3];
        hp.svr_sigma = 1.3;

        const SvrModel m = svr_fit(X, y, hp);

        std::vector<std::vector<double>> Xs(X);
        for (auto& row : Xs) m.feature_scaler.apply_in_place(row);
        std::vector<std::vector<double>> K(5, std::vector<double>(5));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) K[i][j] = rbf_kernel(Xs[i], Xs[j], m.sigma);

        const OracleResult oracle = oracle_solve(K, y, hp.svr_c, hp.svr_epsilon);
        const std::vector<double> w = full_weights(m, Xs);

        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(std::abs(w[i] - oracle.beta[i]) < 1e-3);
            CHECK(std::abs(w[i]) <= hp.svr_c + 1e-3);
            if (std::abs(oracle.beta[i]) > hp.svr_c - 1e-6) ++with_clamped;
            if (std::abs(oracle.beta[i]) > 1e-6 && std::abs(oracle.beta[i]) < hp.svr_c - 1e-6)
                ++with_interior;
        }

        double sum = 0.0;
        for (double v : w) sum += v;
        CHECK(std::abs(sum) < 1e-3);
        CHECK(kkt_gap(K, y, hp.svr_c, hp.svr_epsilon, w) < 1e-3);

        for (std::size_t i = 0; i < 5; ++i) {
            double f_oracle = oracle.bias;
            for (std::size_t j = 0; j < 5; ++j) f_oracle += oracle.beta[j] * K[i][j];
            CHECK(std::abs(m.predict(X[i]) - f_oracle) < 1e-3);
        }
    }
    // The C/eps sweep has to produce both clamped and interior multipliers
    // or the oracle comparison is vacuous.
    CHECK(with_clamped > 5);
    CHECK(with_interior > 5);
}

TEST_CASE("a wide tube swallows everything") {
    std::vector<std::vector<double>> X = {{0.0}, {1.0}, {2.0}, {3.0}, {4.0}};
    std::vector<double> y = {0.1, 0.4, -0.2, 0.3, 0.0};
    ModelHyperparams hp;
    hp.svr_c = 5.0;
    hp.svr_epsilon = 10.0;
    const SvrModel m = svr_fit(X, y, hp);
    CHECK(m.support_vectors.empty());
    // With no support the fit is the constant tube center.
    const double b = m.predict(X[0]);
    CHECK(b == doctest::Approx((0.4 + (-0.2)) / 2.0).epsilon(1e-9));
    for (std::size_t i = 0; i < X.size(); ++i)
        CHECK(std::abs(m.predict(X[i]) - y[i]) <= hp.svr_epsilon);
}

TEST_CASE("smooth functions are fit within the tube plus slack") {
    Rng rng(5);
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (int i = 0; i < 40; ++i) {
        const double t = rng.uniform(-3.0, 3.0);
        X.push_back({t});
        y.push_back(std::sin(t) * 3.0);
    }
    ModelHyperparams hp;
    hp.svr_c = 50.0;
    hp.svr_epsilon = 0.2;
    const SvrModel m = svr_fit(X, y, hp);
    double worst = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        worst = std::max(worst, std::abs(m.predict(X[i]) - y[i]));
    CHECK(worst < 0.3);
}

TEST_CASE("fits are deterministic") {
    Rng rng(31);
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (int i = 0; i < 25; ++i) {
        X.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
        y.push_back(X.back()[0] - 0.5 * X.back()[1]);
    }
    ModelHyperparams hp;
    const SvrModel a = svr_fit(X, y, hp);
    const SvrModel b = svr_fit(X, y, hp);
    CHECK(a.dual_weights == b.dual_weights);
    CHECK(a.bias == b.bias);
    CHECK(a.sigma == b.sigma);
}

TEST_CASE("median pairwise distance and the sigma default") {
    const std::vector<std::vector<double>> rows = {{0.0}, {3.0}, {7.0}};
    // Pairwise distances 3, 4, 7; the middle order statistic is 4.
    CHECK(median_pairwise_distance(rows) == 4.0);
    const std::vector<std::vector<double>> equal = {{2.0}, {2.0}, {2.0}};
    CHECK(median_pairwise_distance(equal) == 1.0);

    std::vector<std::vector<double>> X = {{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}};
    std::vector<double> y = {0.0, 2.0, 1.0, 3.0, 2.0, 4.0};
    ModelHyperparams hp;
    hp.svr_sigma = 0.0; // derive from data
    const SvrModel m = svr_fit(X, y, hp);
    std::vector<std::vector<double>> Xs(X);
    for (auto& r : Xs) m.feature_scaler.apply_in_place(r);
    CHECK(m.sigma == median_pairwise_distance(Xs));
}

TEST_CASE("epsilon and c act in target units, features are standardized") {
    // Scale the target by 100; with c and epsilon scaled the same way the
    // predictions must scale exactly, which pins the units convention. c is
    // large enough that some weights end strictly inside the box: with every
    // weight clamped the optimal bias is an interval, not a point, and the
    // scaling comparison would be vacuous.
    std::vector<std::vector<double>> X = {{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}};
    std::vector<double> y = {1.0, 2.0, 1.5, 3.0, 2.5, 4.0};
    std::vector<double> y_big(y);
    for (double& v : y_big) v *= 100.0;

    ModelHyperparams hp;
    hp.svr_c = 20.0;
    hp.svr_epsilon = 0.25;
    hp.svr_sigma = 1.0;
    ModelHyperparams hp_big = hp;
    hp_big.svr_c = 2000.0;
    hp_big.svr_epsilon = 25.0;

    const SvrModel small = svr_fit(X, y, hp);
    const SvrModel big = svr_fit(X, y_big, hp_big);
    for (const auto& x : X)
        CHECK(big.predict(x) == doctest::Approx(100.0 * small.predict(x)).epsilon(1e-6));
}

TEST_CASE("bad inputs are rejected") {
    ModelHyperparams hp;
    CHECK_THROWS_AS(svr_fit({{1.0}}, {1.0}, hp), DomainError);
    CHECK_THROWS_AS(svr_fit({{1.0}, {2.0}}, {1.0}, hp), LengthMismatchError);
    ModelHyperparams bad = hp;
    bad.svr_c = 0.0;
    CHECK_THROWS_AS(svr_fit({{1.0}, {2.0}}, {1.0, 2.0}, bad), DomainError);
    bad = hp;
    bad.svr_epsilon = -1.0;
    CHECK_THROWS_AS(svr_fit({{1.0}, {2.0}}, {1.0, 2.0}, bad), DomainError);
}
