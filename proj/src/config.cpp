#include "debrisk/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "debrisk/csv.hpp"
#include "debrisk/errors.hpp"

namespace debrisk {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("config key " + key + ": expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

// One mutator per known key; parse_config walks this table.
using Setter = std::function<void(RunConfig&, const std::string& value, const std::string& key)>;

const std::map<std::string, Setter>& setters() {
    auto dbl = [](double RunConfig::*field) {
        return [field](RunConfig& c, const std::string& v, const std::string& k) {
            c.*field = parse_double(v, "config key " + k);
        };
    };
    auto hp_dbl = [](double ModelHyperparams::*field) {
        return [field](RunConfig& c, const std::string& v, const std::string& k) {
            c.hyperparams.*field = parse_double(v, "config key " + k);
        };
    };
    auto bal_dbl = [](double BallisticConfig::*field) {
        return [field](RunConfig& c, const std::string& v, const std::string& k) {
            c.ballistic.*field = parse_double(v, "config key " + k);
        };
    };
    auto drag = [](GeometryClass g) {
        return [g](RunConfig& c, const std::string& v, const std::string& k) {
            c.ballistic.drag_coefficients[static_cast<std::size_t>(g)] =
                parse_double(v, "config key " + k);
        };
    };
    static const std::map<std::string, Setter> table = {
        {"dataset_path", [](RunConfig& c, const std::string& v, const std::string&) {
             c.dataset_path = v;
         }},
        {"fragments_path", [](RunConfig& c, const std::string& v, const std::string&) {
             c.fragments_path = v;
         }},
        {"split_seed", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.split_seed = static_cast<std::uint64_t>(parse_long(v, "config key " + k));
         }},
        {"train_fraction", dbl(&RunConfig::train_fraction)},
        {"learners", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.learners.clear();
             for (const auto& name : split_list(v)) {
                 if (name.empty()) throw ParseError("config key " + k + ": empty learner name");
                 c.learners.push_back(learner_from_string(name));
             }
         }},
        {"max_retries", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.max_retries = static_cast<int>(parse_long(v, "config key " + k));
         }},
        {"error_threshold_lon", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.error_thresholds[0] = parse_double(v, "config key " + k);
         }},
        {"error_threshold_lat", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.error_thresholds[1] = parse_double(v, "config key " + k);
         }},
        {"error_threshold_vel", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.error_thresholds[2] = parse_double(v, "config key " + k);
         }},
        {"svr_c", hp_dbl(&ModelHyperparams::svr_c)},
        {"svr_epsilon", hp_dbl(&ModelHyperparams::svr_epsilon)},
        {"svr_sigma", hp_dbl(&ModelHyperparams::svr_sigma)},
        {"dtr_max_depth", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.hyperparams.dtr_max_depth = static_cast<int>(parse_long(v, "config key " + k));
         }},
        {"dtr_prune", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.hyperparams.dtr_prune = parse_bool(v, k);
         }},
        {"mlp_hidden_sizes", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.hyperparams.mlp_hidden_sizes.clear();
             for (const auto& item : split_list(v))
                 c.hyperparams.mlp_hidden_sizes.push_back(
                     static_cast<int>(parse_long(item, "config key " + k)));
         }},
        {"mlp_alpha", hp_dbl(&ModelHyperparams::mlp_alpha)},
        {"mlp_max_iter", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.hyperparams.mlp_max_iter = static_cast<int>(parse_long(v, "config key " + k));
         }},
        {"mlp_learning_rate", hp_dbl(&ModelHyperparams::mlp_learning_rate)},
        {"mlp_momentum", hp_dbl(&ModelHyperparams::mlp_momentum)},
        {"gen_n", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.gen_n = static_cast<std::size_t>(parse_long(v, "config key " + k));
         }},
        {"gen_seed", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.gen_seed = static_cast<std::uint64_t>(parse_long(v, "config key " + k));
         }},
        {"drag_ball_block", drag(GeometryClass::BallBlock)},
        {"drag_cuboid_block", drag(GeometryClass::CuboidBlock)},
        {"drag_flake", drag(GeometryClass::Flake)},
        {"drag_rhabditiform5", drag(GeometryClass::Rhabditiform5)},
        {"drag_rhabditiform10", drag(GeometryClass::Rhabditiform10)},
        {"atmosphere_scale_height", bal_dbl(&BallisticConfig::atmosphere_scale_height)},
        {"sea_level_density", bal_dbl(&BallisticConfig::sea_level_density)},
        {"earth_radius", bal_dbl(&BallisticConfig::earth_radius)},
        {"gravity", bal_dbl(&BallisticConfig::gravity)},
        {"integration_step", bal_dbl(&BallisticConfig::integration_step)},
        {"orbital_inclination_cap", bal_dbl(&BallisticConfig::orbital_inclination_cap)},
        {"entry_tilt_scale", bal_dbl(&BallisticConfig::entry_tilt_scale)},
        {"max_steps", [](RunConfig& c, const std::string& v, const std::string& k) {
             c.ballistic.max_steps = parse_long(v, "config key " + k);
         }},
    };
    return table;
}

} // namespace

void RunConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw RangeError("train_fraction", "must be strictly between 0 and 1");
    if (max_retries < 0) throw RangeError("max_retries", "must be >= 0");
    if (learners.empty()) throw RangeError("learners", "must name at least one learner");
    for (double t : error_thresholds)
        if (!(t >= 0.0)) throw RangeError("error_threshold", "must be >= 0 (or inf)");
    const auto& hp = hyperparams;
    if (!(hp.svr_c > 0.0)) throw RangeError("svr_c", "must be positive");
    if (!(hp.svr_epsilon >= 0.0)) throw RangeError("svr_epsilon", "must be >= 0");
    if (!(hp.svr_sigma >= 0.0))
        throw RangeError("svr_sigma", "must be >= 0 (0 = median heuristic)");
    if (hp.mlp_hidden_sizes.empty())
        throw RangeError("mlp_hidden_sizes", "must name at least one hidden layer");
    for (int h : hp.mlp_hidden_sizes)
        if (h < 1) throw RangeError("mlp_hidden_sizes", "layer sizes must be >= 1");
    if (!(hp.mlp_alpha >= 0.0)) throw RangeError("mlp_alpha", "must be >= 0");
    if (hp.mlp_max_iter < 1) throw RangeError("mlp_max_iter", "must be >= 1");
    if (!(hp.mlp_learning_rate > 0.0)) throw RangeError("mlp_learning_rate", "must be positive");
    if (!(hp.mlp_momentum >= 0.0 && hp.mlp_momentum < 1.0))
        throw RangeError("mlp_momentum", "must be in [0, 1)");
    if (gen_n < 10) throw RangeError("gen_n", "must be >= 10");
    ballistic.validate();
}

RunConfig parse_config(std::istream& in, const std::string& name) {
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(name + ":" + std::to_string(lineno) +
                             ": expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto& table = setters();
        const auto it = table.find(key);
        if (it == table.end())
            throw ParseError(name + ":" + std::to_string(lineno) + ": unknown config key '" +
                             key + "'");
        it->second(cfg, value, key);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file: " + path);
    return parse_config(in, path);
}

std::string dump_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# pipeline\n";
    out << "dataset_path=" << cfg.dataset_path << "\n";
    out << "fragments_path=" << cfg.fragments_path << "\n";
    out << "split_seed=" << cfg.split_seed << "\n";
    out << "train_fraction=" << format_double(cfg.train_fraction) << "\n";
    out << "learners=";
    for (std::size_t i = 0; i < cfg.learners.size(); ++i)
        out << (i ? "," : "") << to_string(cfg.learners[i]);
    out << "\n";
    out << "max_retries=" << cfg.max_retries << "\n";
    out << "error_threshold_lon=" << format_double(cfg.error_thresholds[0]) << "\n";
    out << "error_threshold_lat=" << format_double(cfg.error_thresholds[1]) << "\n";
    out << "error_threshold_vel=" << format_double(cfg.error_thresholds[2]) << "\n";
    out << "# learner hyperparameters\n";
    out << "svr_c=" << format_double(cfg.hyperparams.svr_c) << "\n";
    out << "svr_epsilon=" << format_double(cfg.hyperparams.svr_epsilon) << "\n";
    out << "svr_sigma=" << format_double(cfg.hyperparams.svr_sigma) << "\n";
    out << "dtr_max_depth=" << cfg.hyperparams.dtr_max_depth << "\n";
    out << "dtr_prune=" << (cfg.hyperparams.dtr_prune ? "true" : "false") << "\n";
    out << "mlp_hidden_sizes=";
    for (std::size_t i = 0; i < cfg.hyperparams.mlp_hidden_sizes.size(); ++i)
        out << (i ? "," : "") << cfg.hyperparams.mlp_hidden_sizes[i];
    out << "\n";
    out << "mlp_alpha=" << format_double(cfg.hyperparams.mlp_alpha) << "\n";
    out << "mlp_max_iter=" << cfg.hyperparams.mlp_max_iter << "\n";
    out << "mlp_learning_rate=" << format_double(cfg.hyperparams.mlp_learning_rate) << "\n";
    out << "mlp_momentum=" << format_double(cfg.hyperparams.mlp_momentum) << "\n";
    out << "# data generator\n";
    out << "gen_n=" << cfg.gen_n << "\n";
    out << "gen_seed=" << cfg.gen_seed << "\n";
    out << "drag_ball_block="
        << format_double(cfg.ballistic.drag_coefficients[0]) << "\n";
    out << "drag_cuboid_block="
        << format_double(cfg.ballistic.drag_coefficients[1]) << "\n";
    out << "drag_flake=" << format_double(cfg.ballistic.drag_coefficients[2]) << "\n";
    out << "drag_rhabditiform5="
        << format_double(cfg.ballistic.drag_coefficients[3]) << "\n";
    out << "drag_rhabditiform10="
        << format_double(cfg.ballistic.drag_coefficients[4]) << "\n";
    out << "atmosphere_scale_height="
        << format_double(cfg.ballistic.atmosphere_scale_height) << "\n";
    out << "sea_level_density=" << format_double(cfg.ballistic.sea_level_density) << "\n";
    out << "earth_radius=" << format_double(cfg.ballistic.earth_radius) << "\n";
    out << "gravity=" << format_double(cfg.ballistic.gravity) << "\n";
    out << "integration_step=" << format_double(cfg.ballistic.integration_step) << "\n";
    out << "orbital_inclination_cap="
        << format_double(cfg.ballistic.orbital_inclination_cap) << "\n";
    out << "entry_tilt_scale=" << format_double(cfg.ballistic.entry_tilt_scale) << "\n";
    out << "max_steps=" << cfg.ballistic.max_steps << "\n";
    return out.str();
}

} // namespace debrisk
