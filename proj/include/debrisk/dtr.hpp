#ifndef DEBRISK_DTR_HPP
#define DEBRISK_DTR_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "debrisk/types.hpp"

namespace debrisk {

// Binary regression-tree node. A node is a leaf when feature_index < 0.
// Every node keeps the training statistics of its region (mean target,
// sample count, sum of squared deviations); internal nodes use them when a
// subtree collapses during pruning.
struct DtrNode {
    double value = 0.0;       // mean of training targets in the region
    std::size_t n_samples = 0;
    double sse = 0.0;         // sum of squared deviations from value

    int feature_index = -1;   // split variable j, -1 for a leaf
    double threshold = 0.0;   // split point s; left region is x[j] <= s
    std::unique_ptr<DtrNode> left;
    std::unique_ptr<DtrNode> right;

    bool is_leaf() const { return feature_index < 0; }
};

struct DtrModel {
    std::unique_ptr<DtrNode> root;
    int max_depth = 5;
    bool pruned = false;

    double predict(const std::vector<double>& x) const;
    double predict(const FeatureVector& x) const;
};

// Grows a least-squares tree: each split minimizes the summed SSE of the two
// child regions over all features and all midpoint thresholds between
// consecutive distinct sorted values. Ties break toward the lowest feature
// index, then the lowest threshold. max_depth <= 0 means unbounded.
std::unique_ptr<DtrNode> dtr_grow(const std::vector<std::vector<double>>& X,
                                  const std::vector<double>& y, int max_depth);

// Bottom-up pessimistic-error pruning. A training row counts as an error
// when its absolute residual exceeds its leaf's training RMSE; a subtree is
// replaced by a leaf when ErrorMean + ErrorSTD >= ErrorMean' of the
// replacement leaf (0.5 continuity correction per leaf).
void dtr_prune(DtrNode& root, const std::vector<std::vector<double>>& X,
               const std::vector<double>& y);

// Grow and, when hp.dtr_prune is set, prune on the same data.
DtrModel dtr_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const ModelHyperparams& hp);

double dtr_predict(const DtrNode& root, const std::vector<double>& x);

std::size_t dtr_node_count(const DtrNode& root);
std::size_t dtr_depth(const DtrNode& root);

// Total split SSE reduction attributed to each feature; the importance used
// by recursive feature elimination.
std::vector<double> dtr_split_gains(const DtrNode& root, std::size_t n_features);

} // namespace debrisk

#endif
