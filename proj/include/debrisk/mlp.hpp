#ifndef DEBRISK_MLP_HPP
#define DEBRISK_MLP_HPP

#include <cstdint>
#include <vector>

#include "debrisk/scaler.hpp"
#include "debrisk/types.hpp"

namespace debrisk {

// Fully connected ReLU network trained with momentum gradient descent on the
// L2-regularized half sum of squared errors. Hidden layers use ReLU, the
// output layer is linear. Features and target are standardized internally;
// predictions come back in original target units.
struct MlpModel {
    std::vector<int> layer_sizes;              // input, hidden..., output
    std::vector<std::vector<double>> weights;  // weights[l]: (fan_out x fan_in), row-major
    std::vector<std::vector<double>> biases;   // biases[l]: fan_out
    AffineScaler feature_scaler;
    AffineScaler target_scaler;
    double final_loss = 0.0;
    int iterations_run = 0;

    double predict(const std::vector<double>& x) const;
    double predict(const FeatureVector& x) const;
};

// Forward pass in standardized space. activations[0] is the input; the last
// entry is the linear output layer.
std::vector<std::vector<double>> mlp_forward(const MlpModel& m, const std::vector<double>& x_std);

// Loss over a standardized batch: 0.5 * sum_i (yhat_i - y_i)^2
// + 0.5 * alpha * sum of squared weights (biases excluded).
double mlp_loss(const MlpModel& m, const std::vector<std::vector<double>>& X_std,
                const std::vector<double>& y_std, double alpha);

// Gradient of mlp_loss with respect to every weight and bias, laid out to
// match MlpModel::weights / biases. Returned as {weight_grads, bias_grads}.
struct MlpGradient {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};
MlpGradient mlp_gradient(const MlpModel& m, const std::vector<std::vector<double>>& X_std,
                         const std::vector<double>& y_std, double alpha);

// Trains on raw-unit rows; standardizes internally. Throws DivergenceError
// if the loss goes non-finite, TooFewRowsError if fewer than 2 rows.
MlpModel mlp_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const ModelHyperparams& hp, std::uint64_t seed);

} // namespace debrisk

#endif
