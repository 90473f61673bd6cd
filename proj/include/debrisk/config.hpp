#ifndef DEBRISK_CONFIG_HPP
#define DEBRISK_CONFIG_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "debrisk/ballistic.hpp"
#include "debrisk/models.hpp"
#include "debrisk/types.hpp"

namespace debrisk {

// Everything a full run needs, read from a flat key=value file. Defaults
// reproduce the documented reference run; `config --dump` prints them all.
struct RunConfig {
    std::string dataset_path;
    std::string fragments_path; // empty = built-in default fragment set

    std::uint64_t split_seed = 42;
    double train_fraction = 0.7;
    std::vector<Learner> learners = {Learner::Svr, Learner::Dtr, Learner::Mlp};
    ModelHyperparams hyperparams;
    // Retry trigger per target (test MSE above threshold retrains with
    // perturbed hyperparameters). Infinity = never retry.
    std::array<double, 3> error_thresholds = {std::numeric_limits<double>::infinity(),
                                              std::numeric_limits<double>::infinity(),
                                              std::numeric_limits<double>::infinity()};
    int max_retries = 0;

    std::size_t gen_n = 1489;
    std::uint64_t gen_seed = 1;
    BallisticConfig ballistic;

    double error_threshold(Target t) const {
        return error_thresholds[static_cast<std::size_t>(t)];
    }
    void validate() const; // throws RangeError naming the offending key
};

// Parses a key=value stream. Blank lines and lines starting with '#' are
// skipped; unknown keys raise ParseError naming the key; later duplicates
// overwrite earlier ones. Values use the same formats dump_config emits.
RunConfig parse_config(std::istream& in, const std::string& name = "<stream>");
RunConfig parse_config_file(const std::string& path);

// Emits every key in a fixed order; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& cfg);

} // namespace debrisk

#endif
