#include "debrisk/mlp.hpp"

#include <cmath>
#include <cstddef>

#include "debrisk/errors.hpp"
#include "debrisk/rng.hpp"

namespace debrisk {

namespace {

inline double relu(double v) { return v > 0.0 ? v : 0.0; }
inline double relu_grad(double pre) { return pre > 0.0 ? 1.0 : 0.0; }

} // namespace

std::vector<std::vector<double>> mlp_forward(const MlpModel& m, const std::vector<double>& x_std) {
    const std::size_t n_layers = m.weights.size();
    std::vector<std::vector<double>> acts(n_layers + 1);
    acts[0] = x_std;
    for (std::size_t l = 0; l < n_layers; ++l) {
        const int fan_in = m.layer_sizes[l];
        const int fan_out = m.layer_sizes[l + 1];
        const auto& W = m.weights[l];
        const auto& b = m.biases[l];
        const auto& in = acts[l];
        auto& out = acts[l + 1];
        out.resize(static_cast<std::size_t>(fan_out));
        const bool last = (l + 1 == n_layers);
        for (int r = 0; r < fan_out; ++r) {
            double z = b[static_cast<std::size_t>(r)];
            const double* wr = &W[static_cast<std::size_t>(r) * fan_in];
            for (int c = 0; c < fan_in; ++c) z += wr[c] * in[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(r)] = last ? z : relu(z);
        }
    }
    return acts;
}

double mlp_loss(const MlpModel& m, const std::vector<std::vector<double>>& X_std,
                const std::vector<double>& y_std, double alpha) {
    double data = 0.0;
    for (std::size_t i = 0; i < X_std.size(); ++i) {
        const auto acts = mlp_forward(m, X_std[i]);
        const double e = acts.back()[0] - y_std[i];
        data += e * e;
    }
    double reg = 0.0;
    for (const auto& W : m.weights)
        for (double w : W) reg += w * w;
    return 0.5 * data + 0.5 * alpha * reg;
}

MlpGradient mlp_gradient(const MlpModel& m, const std::vector<std::vector<double>>& X_std,
                         const std::vector<double>& y_std, double alpha) {
    const std::size_t n_layers = m.weights.size();
    MlpGradient g;
    g.weights.resize(n_layers);
    g.biases.resize(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        g.weights[l].assign(m.weights[l].size(), 0.0);
        g.biases[l].assign(m.biases[l].size(), 0.0);
    }

    // Preactivations are needed for the ReLU subgradient, so redo the forward
    // pass keeping them.
    std::vector<std::vector<double>> pre(n_layers), acts(n_layers + 1);
    for (std::size_t i = 0; i < X_std.size(); ++i) {
        acts[0] = X_std[i];
        for (std::size_t l = 0; l < n_layers; ++l) {
            const int fan_in = m.layer_sizes[l];
            const int fan_out = m.layer_sizes[l + 1];
            const auto& W = m.weights[l];
            const auto& b = m.biases[l];
            pre[l].resize(static_cast<std::size_t>(fan_out));
            acts[l + 1].resize(static_cast<std::size_t>(fan_out));
            const bool last = (l + 1 == n_layers);
            for (int r = 0; r < fan_out; ++r) {
                double z = b[static_cast<std::size_t>(r)];
                const double* wr = &W[static_cast<std::size_t>(r) * fan_in];
                for (int c = 0; c < fan_in; ++c) z += wr[c] * acts[l][static_cast<std::size_t>(c)];
                pre[l][static_cast<std::size_t>(r)] = z;
                acts[l + 1][static_cast<std::size_t>(r)] = last ? z : relu(z);
            }
        }

        // Backward pass: delta starts as dL/d(output) for the squared error.
        std::vector<double> delta{acts[n_layers][0] - y_std[i]};
        for (std::size_t l = n_layers; l-- > 0;) {
            const int fan_in = m.layer_sizes[l];
            const int fan_out = m.layer_sizes[l + 1];
            auto& gW = g.weights[l];
            auto& gb = g.biases[l];
            for (int r = 0; r < fan_out; ++r) {
                const double d = delta[static_cast<std::size_t>(r)];
                gb[static_cast<std::size_t>(r)] += d;
                double* gwr = &gW[static_cast<std::size_t>(r) * fan_in];
                for (int c = 0; c < fan_in; ++c) gwr[c] += d * acts[l][static_cast<std::size_t>(c)];
            }
            if (l == 0) break;
            std::vector<double> next(static_cast<std::size_t>(fan_in), 0.0);
            const auto& W = m.weights[l];
            for (int c = 0; c < fan_in; ++c) {
                double acc = 0.0;
                for (int r = 0; r < fan_out; ++r)
                    acc += W[static_cast<std::size_t>(r) * fan_in + c] *
                           delta[static_cast<std::size_t>(r)];
                next[static_cast<std::size_t>(c)] =
                    acc * relu_grad(pre[l - 1][static_cast<std::size_t>(c)]);
            }
            delta = std::move(next);
        }
    }

    for (std::size_t l = 0; l < n_layers; ++l)
        for (std::size_t k = 0; k < m.weights[l].size(); ++k)
            g.weights[l][k] += alpha * m.weights[l][k];
    return g;
}

MlpModel mlp_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const ModelHyperparams& hp, std::uint64_t seed) {
    if (X.size() < 2) throw TooFewRowsError("mlp_fit needs at least 2 rows");
    if (X.size() != y.size()) throw LengthMismatchError("mlp_fit: |X| != |y|");

    MlpModel m;
    m.layer_sizes.push_back(static_cast<int>(X.front().size()));
    for (int h : hp.mlp_hidden_sizes) {
        if (h < 1) throw DomainError("mlp_fit: hidden layer size must be >= 1");
        m.layer_sizes.push_back(h);
    }
    m.layer_sizes.push_back(1);

    m.feature_scaler = AffineScaler::fit(X);
    m.target_scaler = AffineScaler::fit_single(y);
    std::vector<std::vector<double>> X_std = X;
    for (auto& row : X_std) m.feature_scaler.apply_in_place(row);
    std::vector<double> y_std(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y_std[i] = m.target_scaler.apply_single(y[i], 0);

    // He initialization keeps ReLU preactivation variance near 1.
    Rng rng(seed);
    const std::size_t n_layers = m.layer_sizes.size() - 1;
    m.weights.resize(n_layers);
    m.biases.resize(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        const int fan_in = m.layer_sizes[l];
        const int fan_out = m.layer_sizes[l + 1];
        const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
        m.weights[l].resize(static_cast<std::size_t>(fan_out) * fan_in);
        for (auto& w : m.weights[l]) w = rng.normal() * scale;
        m.biases[l].assign(static_cast<std::size_t>(fan_out), 0.0);
    }

    const double n = static_cast<double>(X.size());
    std::vector<std::vector<double>> vel_w(n_layers), vel_b(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        vel_w[l].assign(m.weights[l].size(), 0.0);
        vel_b[l].assign(m.biases[l].size(), 0.0);
    }

    for (int it = 0; it < hp.mlp_max_iter; ++it) {
        const MlpGradient g = mlp_gradient(m, X_std, y_std, hp.mlp_alpha);
        for (std::size_t l = 0; l < n_layers; ++l) {
            for (std::size_t k = 0; k < m.weights[l].size(); ++k) {
                vel_w[l][k] = hp.mlp_momentum * vel_w[l][k] -
                              (hp.mlp_learning_rate / n) * g.weights[l][k];
                m.weights[l][k] += vel_w[l][k];
            }
            for (std::size_t k = 0; k < m.biases[l].size(); ++k) {
                vel_b[l][k] =
                    hp.mlp_momentum * vel_b[l][k] - (hp.mlp_learning_rate / n) * g.biases[l][k];
                m.biases[l][k] += vel_b[l][k];
            }
        }
        m.iterations_run = it + 1;
        const double loss = mlp_loss(m, X_std, y_std, hp.mlp_alpha);
        if (!std::isfinite(loss)) throw DivergenceError("mlp_fit: loss became non-finite");
        m.final_loss = loss;
    }
    return m;
}

double MlpModel::predict(const std::vector<double>& x) const {
    std::vector<double> x_std = x;
    feature_scaler.apply_in_place(x_std);
    const auto acts = mlp_forward(*this, x_std);
    return target_scaler.invert_single(acts.back()[0], 0);
}

double MlpModel::predict(const FeatureVector& x) const {
    const auto a = x.to_array();
    return predict(std::vector<double>(a.begin(), a.end()));
}

} // namespace debrisk
