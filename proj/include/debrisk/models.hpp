#ifndef DEBRISK_MODELS_HPP
#define DEBRISK_MODELS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "debrisk/dtr.hpp"
#include "debrisk/mlp.hpp"
#include "debrisk/svr.hpp"
#include "debrisk/types.hpp"

namespace debrisk {

// Bumped whenever the model JSON layout changes incompatibly.
inline constexpr int kModelFormatVersion = 1;

enum class Learner { Svr, Dtr, Mlp };

const char* to_string(Learner l);
Learner learner_from_string(const std::string& s);

using AnyModel = std::variant<SvrModel, DtrModel, MlpModel>;

// One trained (learner, target, fragment) cell of the run matrix.
struct TrainedCell {
    Learner learner = Learner::Svr;
    Target target = Target::Lon;
    int fragment_id = 1; // 1-based
    int attempts = 1;    // fits performed, including retries
    AnyModel model;

    double predict(const FeatureVector& x) const;
    double predict(const std::vector<double>& x) const;
};

// A full training run: the cells plus the split bookkeeping needed to
// re-evaluate them on the exact test partition they were trained against.
struct ModelSet {
    std::uint64_t split_seed = 0;
    double train_fraction = 0.7;
    std::size_t dataset_rows = 0;
    std::vector<TrainedCell> cells;

    // nullptr when the cell is absent.
    const TrainedCell* find(Learner l, Target t, int fragment_id) const;
};

// JSON round trip. Doubles are written in shortest round-trip form, so a
// read-back model predicts bit-identically to the original.
std::string model_set_to_json(const ModelSet& set);
ModelSet model_set_from_json(const std::string& text);

void write_model_set(const std::string& path, const ModelSet& set);
ModelSet read_model_set(const std::string& path);

} // namespace debrisk

#endif
