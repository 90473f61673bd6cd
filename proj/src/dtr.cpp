#include "debrisk/dtr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "debrisk/errors.hpp"

namespace debrisk {

namespace {

struct NodeStats {
    double mean = 0.0;
    double sse = 0.0;
};

NodeStats region_stats(const std::vector<double>& y, const std::vector<std::size_t>& idx) {
    long double sum = 0.0L;
    for (std::size_t i : idx) sum += y[i];
    NodeStats s;
    s.mean = static_cast<double>(sum / static_cast<long double>(idx.size()));
    long double sq = 0.0L;
    for (std::size_t i : idx) {
        const long double d = y[i] - s.mean;
        sq += d * d;
    }
    s.sse = static_cast<double>(sq);
    return s;
}

struct BestSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double total_sse = 0.0;
    std::size_t left_count = 0;
};

// Scans all (feature, midpoint) candidates with prefix sums over the sorted
// order; the winner minimizes sse_left + sse_right with ties broken by
// (lowest feature, lowest threshold) via strict improvement in scan order.
BestSplit best_split(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                     const std::vector<std::size_t>& idx, std::size_t n_features) {
    BestSplit best;
    const std::size_t n = idx.size();
    std::vector<std::size_t> order(idx);
    for (std::size_t j = 0; j < n_features; ++j) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (X[a][j] != X[b][j]) return X[a][j] < X[b][j];
            return a < b;
        });
        long double sum_left = 0.0L, sq_left = 0.0L;
        long double sum_total = 0.0L, sq_total = 0.0L;
        for (std::size_t i : order) {
            sum_total += y[i];
            sq_total += static_cast<long double>(y[i]) * y[i];
        }
        for (std::size_t p = 1; p < n; ++p) {
            const double yprev = y[order[p - 1]];
            sum_left += yprev;
            sq_left += static_cast<long double>(yprev) * yprev;
            const double vprev = X[order[p - 1]][j];
            const double vnext = X[order[p]][j];
            if (vprev == vnext) continue;
            const long double nl = static_cast<long double>(p);
            const long double nr = static_cast<long double>(n - p);
            const long double sum_right = sum_total - sum_left;
            const long double sq_right = sq_total - sq_left;
            const long double sse_l = sq_left - sum_left * sum_left / nl;
            const long double sse_r = sq_right - sum_right * sum_right / nr;
            const double total = static_cast<double>(sse_l + sse_r);
            if (!best.found || total < best.total_sse) {
                best.found = true;
                best.feature = static_cast<int>(j);
                best.threshold = (vprev + vnext) / 2.0;
                best.total_sse = total;
                best.left_count = p;
            }
        }
    }
    return best;
}

std::unique_ptr<DtrNode> grow(const std::vector<std::vector<double>>& X,
                              const std::vector<double>& y, std::vector<std::size_t>& idx,
                              int depth_left, std::size_t n_features) {
    auto node = std::make_unique<DtrNode>();
    const NodeStats stats = region_stats(y, idx);
    node->value = stats.mean;
    node->n_samples = idx.size();
    node->sse = stats.sse;

    if (depth_left == 0 || idx.size() < 2 || stats.sse <= 0.0) return node;

    const BestSplit split = best_split(X, y, idx, n_features);
    if (!split.found) return node; // every feature constant in this region

    std::vector<std::size_t> left_idx, right_idx;
    left_idx.reserve(split.left_count);
    right_idx.reserve(idx.size() - split.left_count);
    for (std::size_t i : idx) {
        if (X[i][split.feature] <= split.threshold)
            left_idx.push_back(i);
        else
            right_idx.push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();

    node->feature_index = split.feature;
    node->threshold = split.threshold;
    node->left = grow(X, y, left_idx, depth_left - 1, n_features);
    node->right = grow(X, y, right_idx, depth_left - 1, n_features);
    return node;
}

// Rows whose absolute residual exceeds the leaf RMSE count as errors.
std::size_t count_errors(const std::vector<double>& y, const std::vector<std::size_t>& idx,
                         double value, double sse) {
    const double rmse = idx.empty() ? 0.0 : std::sqrt(sse / static_cast<double>(idx.size()));
    std::size_t e = 0;
    for (std::size_t i : idx)
        if (std::abs(y[i] - value) > rmse) ++e;
    return e;
}

struct SubtreeErrors {
    std::size_t errors = 0; // sum over leaves
    std::size_t leaves = 0;
    std::size_t samples = 0;
};

// Bottom-up pass: children are pruned first, then the node itself is tested
// with its leaves as they stand after that. Returns the leaf error tally of
// the (possibly collapsed) subtree.
SubtreeErrors prune_rec(DtrNode& node, const std::vector<std::vector<double>>& X,
                        const std::vector<double>& y, const std::vector<std::size_t>& idx) {
    if (node.is_leaf()) {
        SubtreeErrors se;
        se.errors = count_errors(y, idx, node.value, node.sse);
        se.leaves = 1;
        se.samples = idx.size();
        return se;
    }

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
        if (X[i][node.feature_index] <= node.threshold)
            left_idx.push_back(i);
        else
            right_idx.push_back(i);
    }
    const SubtreeErrors le = prune_rec(*node.left, X, y, left_idx);
    const SubtreeErrors re = prune_rec(*node.right, X, y, right_idx);

    SubtreeErrors se;
    se.errors = le.errors + re.errors;
    se.leaves = le.leaves + re.leaves;
    se.samples = idx.size();

    const double sum_n = static_cast<double>(se.samples);
    const double error_ratio =
        (static_cast<double>(se.errors) + 0.5 * static_cast<double>(se.leaves)) / sum_n;
    const double error_mean = error_ratio * sum_n;
    const double error_std = std::sqrt(error_ratio * sum_n * (1.0 - error_ratio));

    const std::size_t e_leaf = count_errors(y, idx, node.value, node.sse);
    const double error_mean_leaf = static_cast<double>(e_leaf) + 0.5;

    if (error_mean + error_std >= error_mean_leaf) {
        node.feature_index = -1;
        node.threshold = 0.0;
        node.left.reset();
        node.right.reset();
        SubtreeErrors collapsed;
        collapsed.errors = e_leaf;
        collapsed.leaves = 1;
        collapsed.samples = idx.size();
        return collapsed;
    }
    return se;
}

} // namespace

std::unique_ptr<DtrNode> dtr_grow(const std::vector<std::vector<double>>& X,
                                  const std::vector<double>& y, int max_depth) {
    if (X.empty()) throw DomainError("dtr_grow needs at least 1 row");
    if (X.size() != y.size()) throw LengthMismatchError("dtr_grow: |X| != |y|");
    std::vector<std::size_t> idx(X.size());
    std::iota(idx.begin(), idx.end(), 0);
    const int depth_left = max_depth <= 0 ? -1 : max_depth;
    return grow(X, y, idx, depth_left, X.front().size());
}

void dtr_prune(DtrNode& root, const std::vector<std::vector<double>>& X,
               const std::vector<double>& y) {
    std::vector<std::size_t> idx(X.size());
    std::iota(idx.begin(), idx.end(), 0);
    prune_rec(root, X, y, idx);
}

DtrModel dtr_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const ModelHyperparams& hp) {
    DtrModel m;
    m.max_depth = hp.dtr_max_depth;
    m.root = dtr_grow(X, y, hp.dtr_max_depth);
    if (hp.dtr_prune) {
        dtr_prune(*m.root, X, y);
        m.pruned = true;
    }
    return m;
}

double dtr_predict(const DtrNode& root, const std::vector<double>& x) {
    const DtrNode* node = &root;
    while (!node->is_leaf())
        node = x[node->feature_index] <= node->threshold ? node->left.get() : node->right.get();
    return node->value;
}

double DtrModel::predict(const std::vector<double>& x) const { return dtr_predict(*root, x); }

double DtrModel::predict(const FeatureVector& x) const {
    const auto a = x.to_array();
    return dtr_predict(*root, std::vector<double>(a.begin(), a.end()));
}

std::size_t dtr_node_count(const DtrNode& root) {
    if (root.is_leaf()) return 1;
    return 1 + dtr_node_count(*root.left) + dtr_node_count(*root.right);
}

std::size_t dtr_depth(const DtrNode& root) {
    if (root.is_leaf()) return 0;
    return 1 + std::max(dtr_depth(*root.left), dtr_depth(*root.right));
}

namespace {

void accumulate_gains(const DtrNode& node, std::vector<double>& gains) {
    if (node.is_leaf()) return;
    const double gain = node.sse - (node.left->sse + node.right->sse);
    gains[static_cast<std::size_t>(node.feature_index)] += gain;
    accumulate_gains(*node.left, gains);
    accumulate_gains(*node.right, gains);
}

} // namespace

std::vector<double> dtr_split_gains(const DtrNode& root, std::size_t n_features) {
    std::vector<double> gains(n_features, 0.0);
    accumulate_gains(root, gains);
    return gains;
}

} // namespace debrisk
