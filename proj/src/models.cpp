#include "debrisk/models.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "debrisk/errors.hpp"

namespace debrisk {

namespace {

using json = nlohmann::ordered_json;

json scaler_to_json(const AffineScaler& s) {
    return json{{"mean", s.mean}, {"std_dev", s.std_dev}};
}

AffineScaler scaler_from_json(const json& j) {
    AffineScaler s;
    s.mean = j.at("mean").get<std::vector<double>>();
    s.std_dev = j.at("std_dev").get<std::vector<double>>();
    if (s.mean.size() != s.std_dev.size())
        throw ParseError("model scaler: mean/std_dev length mismatch");
    return s;
}

json svr_to_json(const SvrModel& m) {
    return json{{"support_vectors", m.support_vectors},
                {"dual_weights", m.dual_weights},
                {"bias", m.bias},
                {"sigma", m.sigma},
                {"c", m.c},
                {"epsilon", m.epsilon},
                {"feature_scaler", scaler_to_json(m.feature_scaler)}};
}

SvrModel svr_from_json(const json& j) {
    SvrModel m;
    m.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
    m.dual_weights = j.at("dual_weights").get<std::vector<double>>();
    if (m.support_vectors.size() != m.dual_weights.size())
        throw ParseError("svr model: support vector / dual weight count mismatch");
    m.bias = j.at("bias").get<double>();
    m.sigma = j.at("sigma").get<double>();
    m.c = j.at("c").get<double>();
    m.epsilon = j.at("epsilon").get<double>();
    m.feature_scaler = scaler_from_json(j.at("feature_scaler"));
    return m;
}

json dtr_node_to_json(const DtrNode& n) {
    json j{{"value", n.value}, {"n", n.n_samples}, {"sse", n.sse}};
    if (!n.is_leaf()) {
        j["feature"] = n.feature_index;
        j["threshold"] = n.threshold;
        j["left"] = dtr_node_to_json(*n.left);
        j["right"] = dtr_node_to_json(*n.right);
    }
    return j;
}

std::unique_ptr<DtrNode> dtr_node_from_json(const json& j) {
    auto n = std::make_unique<DtrNode>();
    n->value = j.at("value").get<double>();
    n->n_samples = j.at("n").get<std::size_t>();
    n->sse = j.at("sse").get<double>();
    if (j.contains("feature")) {
        n->feature_index = j.at("feature").get<int>();
        n->threshold = j.at("threshold").get<double>();
        n->left = dtr_node_from_json(j.at("left"));
        n->right = dtr_node_from_json(j.at("right"));
        if (n->feature_index < 0) throw ParseError("dtr model: split node with negative feature");
    }
    return n;
}

json dtr_to_json(const DtrModel& m) {
    if (!m.root) throw DomainError("cannot serialize an empty decision tree");
    return json{{"max_depth", m.max_depth}, {"pruned", m.pruned},
                {"root", dtr_node_to_json(*m.root)}};
}

DtrModel dtr_from_json(const json& j) {
    DtrModel m;
    m.max_depth = j.at("max_depth").get<int>();
    m.pruned = j.at("pruned").get<bool>();
    m.root = dtr_node_from_json(j.at("root"));
    return m;
}

json mlp_to_json(const MlpModel& m) {
    return json{{"layer_sizes", m.layer_sizes},
                {"weights", m.weights},
                {"biases", m.biases},
                {"feature_scaler", scaler_to_json(m.feature_scaler)},
                {"target_scaler", scaler_to_json(m.target_scaler)},
                {"final_loss", m.final_loss},
                {"iterations_run", m.iterations_run}};
}

MlpModel mlp_from_json(const json& j) {
    MlpModel m;
    m.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    if (m.layer_sizes.size() < 2) throw ParseError("mlp model: needs at least two layers");
    const std::size_t links = m.layer_sizes.size() - 1;
    if (m.weights.size() != links || m.biases.size() != links)
        throw ParseError("mlp model: weight/bias layer count does not match layer_sizes");
    for (std::size_t l = 0; l < links; ++l) {
        const auto fan_in = static_cast<std::size_t>(m.layer_sizes[l]);
        const auto fan_out = static_cast<std::size_t>(m.layer_sizes[l + 1]);
        if (m.weights[l].size() != fan_in * fan_out || m.biases[l].size() != fan_out)
            throw ParseError("mlp model: layer " + std::to_string(l) + " dimension mismatch");
    }
    m.feature_scaler = scaler_from_json(j.at("feature_scaler"));
    m.target_scaler = scaler_from_json(j.at("target_scaler"));
    m.final_loss = j.at("final_loss").get<double>();
    m.iterations_run = j.at("iterations_run").get<int>();
    return m;
}

} // namespace

const char* to_string(Learner l) {
    switch (l) {
    case Learner::Svr: return "svr";
    case Learner::Dtr: return "dtr";
    case Learner::Mlp: return "mlp";
    }
    return "svr";
}

Learner learner_from_string(const std::string& s) {
    if (s == "svr") return Learner::Svr;
    if (s == "dtr") return Learner::Dtr;
    if (s == "mlp") return Learner::Mlp;
    throw ParseError("unknown learner name: '" + s + "' (expected svr, dtr or mlp)");
}

double TrainedCell::predict(const FeatureVector& x) const {
    const auto a = x.to_array();
    return predict(std::vector<double>(a.begin(), a.end()));
}

double TrainedCell::predict(const std::vector<double>& x) const {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

const TrainedCell* ModelSet::find(Learner l, Target t, int fragment_id) const {
    for (const auto& c : cells)
        if (c.learner == l && c.target == t && c.fragment_id == fragment_id) return &c;
    return nullptr;
}

std::string model_set_to_json(const ModelSet& set) {
    json root;
    root["format_version"] = kModelFormatVersion;
    root["split_seed"] = set.split_seed;
    root["train_fraction"] = set.train_fraction;
    root["dataset_rows"] = set.dataset_rows;
    json cells = json::array();
    for (const auto& c : set.cells) {
        json jc{{"learner", to_string(c.learner)},
                {"target", to_string(c.target)},
                {"fragment_id", c.fragment_id},
                {"attempts", c.attempts}};
        std::visit(
            [&](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, SvrModel>)
                    jc["svr"] = svr_to_json(m);
                else if constexpr (std::is_same_v<M, DtrModel>)
                    jc["dtr"] = dtr_to_json(m);
                else
                    jc["mlp"] = mlp_to_json(m);
            },
            c.model);
        cells.push_back(std::move(jc));
    }
    root["models"] = std::move(cells);
    return root.dump(1) + "\n";
}

ModelSet model_set_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        const int version = root.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw ParseError("model file format_version " + std::to_string(version) +
                             " not supported (expected " +
                             std::to_string(kModelFormatVersion) + ")");
        ModelSet set;
        set.split_seed = root.at("split_seed").get<std::uint64_t>();
        set.train_fraction = root.at("train_fraction").get<double>();
        set.dataset_rows = root.at("dataset_rows").get<std::size_t>();
        for (const auto& jc : root.at("models")) {
            TrainedCell c;
            c.learner = learner_from_string(jc.at("learner").get<std::string>());
            c.target = target_from_string(jc.at("target").get<std::string>());
            c.fragment_id = jc.at("fragment_id").get<int>();
            if (c.fragment_id < 1 || c.fragment_id > kFragmentCount)
                throw ParseError("model file: fragment_id " + std::to_string(c.fragment_id) +
                                 " outside 1.." + std::to_string(kFragmentCount));
            c.attempts = jc.at("attempts").get<int>();
            switch (c.learner) {
            case Learner::Svr: c.model = svr_from_json(jc.at("svr")); break;
            case Learner::Dtr: c.model = dtr_from_json(jc.at("dtr")); break;
            case Learner::Mlp: c.model = mlp_from_json(jc.at("mlp")); break;
            }
            set.cells.push_back(std::move(c));
        }
        return set;
    } catch (const json::exception& e) {
        throw ParseError(std::string("model file structure: ") + e.what());
    }
}

void write_model_set(const std::string& path, const ModelSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open model file for writing: " + path);
    out << model_set_to_json(set);
    if (!out) throw ParseError("failed writing model file: " + path);
}

ModelSet read_model_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_set_from_json(buf.str());
}

} // namespace debrisk
