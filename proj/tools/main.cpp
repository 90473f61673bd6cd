// debrisk command line driver: dataset generation, training, evaluation,
// prediction, and ground-risk assessment over the 3x3x7 model matrix.
#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "debrisk/ballistic.hpp"
#include "debrisk/config.hpp"
#include "debrisk/csv.hpp"
#include "debrisk/errors.hpp"
#include "debrisk/fragments.hpp"
#include "debrisk/geojson.hpp"
#include "debrisk/metrics.hpp"
#include "debrisk/models.hpp"
#include "debrisk/pipeline.hpp"
#include "debrisk/risk.hpp"
#include "debrisk/types.hpp"

namespace {

using namespace debrisk;

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (!path.empty()) cfg = parse_config_file(path);
    cfg.validate();
    return cfg;
}

std::vector<FragmentSpec> load_fragments(const RunConfig& cfg, const std::string& flag_path) {
    const std::string& path = flag_path.empty() ? cfg.fragments_path : flag_path;
    if (path.empty()) return default_fragment_set();
    return read_fragments_csv(path);
}

// The --data flag wins over dataset_path from the config file.
std::string resolve_data_path(const std::string& flag_path, const RunConfig& cfg) {
    if (!flag_path.empty()) return flag_path;
    if (!cfg.dataset_path.empty()) return cfg.dataset_path;
    throw UsageError("--data is required (or set dataset_path in the config file)");
}

FeatureVector parse_features(const std::string& text) {
    const std::vector<std::string> tokens = split_csv_line(text);
    if (tokens.size() != kFeatureCount) {
        std::string names;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            if (i) names += ",";
            names += kFeatureNames[i];
        }
        throw UsageError("--features needs " + std::to_string(kFeatureCount) +
                         " comma-separated values (" + names + "), got " +
                         std::to_string(tokens.size()));
    }
    std::array<double, kFeatureCount> a{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        try {
            a[i] = parse_double(tokens[i], std::string("--features ") + kFeatureNames[i]);
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
    return FeatureVector::from_array(a);
}

void set_target(LabelVector& y, Target t, double v) {
    switch (t) {
    case Target::Lon: y.landing_lon = v; break;
    case Target::Lat: y.landing_lat = v; break;
    case Target::Vel: y.landing_velocity = v; break;
    }
}

double mae_of(const EvalReport& rep, Target t) {
    switch (t) {
    case Target::Lon: return rep.mean_abs_error_lon;
    case Target::Lat: return rep.mean_abs_error_lat;
    case Target::Vel: return rep.mean_abs_error_vel;
    }
    return 0.0;
}

constexpr const char* kLandingsHeader = "fragment_id,landing_lon,landing_lat,landing_velocity";

LabelVector predict_labels(const ModelSet& ms, Learner l, int fragment_id,
                           const FeatureVector& x) {
    LabelVector y;
    for (Target t : {Target::Lon, Target::Lat, Target::Vel}) {
        const TrainedCell* cell = ms.find(l, t, fragment_id);
        if (cell == nullptr)
            throw RangeError("models", std::string(to_string(l)) + "/" + to_string(t) +
                                           "/fragment " + std::to_string(fragment_id) +
                                           " is not present in the model set");
        set_target(y, t, cell->predict(x));
    }
    return y;
}

// One landing row per fragment id, matching the `predict` output format.
std::vector<LabelVector> read_landings_csv(const std::string& path,
                                           const std::vector<FragmentSpec>& fragments) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ":1: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kLandingsHeader)
        throw ParseError(path + ":1: expected header '" + kLandingsHeader + "'");

    std::map<int, LabelVector> by_id;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        const std::vector<std::string> cols = split_csv_line(line);
        if (cols.size() != 4)
            throw ParseError(where + ": expected 4 columns, got " + std::to_string(cols.size()));
        const int id = static_cast<int>(parse_long(cols[0], where + ": fragment_id"));
        LabelVector y;
        y.landing_lon = parse_double(cols[1], where + ": landing_lon");
        y.landing_lat = parse_double(cols[2], where + ": landing_lat");
        y.landing_velocity = parse_double(cols[3], where + ": landing_velocity");
        if (!by_id.emplace(id, y).second)
            throw ParseError(where + ": duplicate fragment_id " + std::to_string(id));
    }

    std::vector<LabelVector> out;
    out.reserve(fragments.size());
    for (const FragmentSpec& f : fragments) {
        const auto it = by_id.find(f.id);
        if (it == by_id.end())
            throw ParseError(path + ": no landing row for fragment_id " + std::to_string(f.id));
        out.push_back(it->second);
    }
    return out;
}

struct GenDataArgs {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    bool n_given = false, seed_given = false;
    std::string out, config, fragments;
};

int run_gen_data(const GenDataArgs& a) {
    const RunConfig cfg = load_config(a.config);
    const std::size_t n = a.n_given ? a.n : cfg.gen_n;
    const std::uint64_t seed = a.seed_given ? a.seed : cfg.gen_seed;
    const Dataset ds = generate_dataset(n, seed, cfg.ballistic, load_fragments(cfg, a.fragments));
    write_dataset_csv(a.out, ds);
    std::cout << "wrote " << ds.rows.size() << " rows to " << a.out << "\n";
    return 0;
}

struct TrainArgs {
    std::string data, config, models_out;
};

int run_train(const TrainArgs& a) {
    const RunConfig cfg = load_config(a.config);
    const Dataset ds = read_dataset_csv(resolve_data_path(a.data, cfg));
    const RunResult res = run_all(ds, cfg);
    write_model_set(a.models_out, res.models);

    std::size_t failed = 0;
    for (const CellOutcome& c : res.outcomes) {
        if (c.ok) continue;
        ++failed;
        std::cerr << "cell " << to_string(c.learner) << "/" << to_string(c.target) << "/fragment "
                  << c.fragment_id << " failed: " << c.error << "\n";
    }
    std::cout << "trained " << (res.outcomes.size() - failed) << "/" << res.outcomes.size()
              << " cells, models written to " << a.models_out << "\n";
    return failed == 0 ? 0 : 2;
}

struct EvaluateArgs {
    std::string data, models, out;
};

int run_evaluate(const EvaluateArgs& a) {
    const Dataset ds = read_dataset_csv(resolve_data_path(a.data, RunConfig{}));
    const ModelSet ms = read_model_set(a.models);
    if (ms.dataset_rows != ds.rows.size())
        throw RangeError("dataset_rows",
                         "model set was trained on " + std::to_string(ms.dataset_rows) +
                             " rows but the dataset has " + std::to_string(ds.rows.size()));
    const Split sp = split_dataset(ds, ms.split_seed, ms.train_fraction);

    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + a.out);
    out << "learner,target,fragment_id,attempts,n_test,mse,mae,r2\n";
    for (const TrainedCell& cell : ms.cells) {
        const EvalReport rep = evaluate_cell(cell, ds, sp.test);
        out << to_string(cell.learner) << ',' << to_string(cell.target) << ',' << cell.fragment_id
            << ',' << cell.attempts << ',' << rep.n_test << ',' << format_double(rep.mse) << ','
            << format_double(mae_of(rep, cell.target)) << ',' << format_double(rep.r2) << "\n";
    }
    std::cout << "wrote evaluation of " << ms.cells.size() << " cells to " << a.out << "\n";
    return 0;
}

struct PredictArgs {
    std::string models, features, learner = "dtr";
};

int run_predict(const PredictArgs& a) {
    const ModelSet ms = read_model_set(a.models);
    const FeatureVector x = parse_features(a.features);
    const Learner l = learner_from_string(a.learner);
    std::cout << kLandingsHeader << "\n";
    for (int f = 1; f <= kFragmentCount; ++f) {
        const LabelVector y = predict_labels(ms, l, f, x);
        std::cout << f << ',' << format_double(y.landing_lon) << ','
                  << format_double(y.landing_lat) << ',' << format_double(y.landing_velocity)
                  << "\n";
    }
    return 0;
}

struct AssessArgs {
    std::string landings, models, features, learner = "dtr";
    std::string grid, gdp, out, fragments;
};

int run_assess(const AssessArgs& a) {
    if (a.landings.empty() && a.models.empty())
        throw UsageError("assess needs either --landings or --models with --features");

    const std::vector<FragmentSpec> frags = load_fragments(RunConfig{}, a.fragments);
    std::vector<LabelVector> landings;
    if (!a.landings.empty()) {
        landings = read_landings_csv(a.landings, frags);
    } else {
        const ModelSet ms = read_model_set(a.models);
        const FeatureVector x = parse_features(a.features);
        const Learner l = learner_from_string(a.learner);
        landings.reserve(frags.size());
        for (const FragmentSpec& f : frags) landings.push_back(predict_labels(ms, l, f.id, x));
    }

    const std::vector<GeoCell> grid = read_grid_csv(a.grid);
    const std::vector<GdpRecord> gdp = read_gdp_csv(a.gdp);
    const std::vector<RiskReport> reports = assess(frags, landings, grid, gdp);
    write_risk_csv(a.out + ".csv", reports);
    write_risk_geojson(a.out + ".geojson", reports);
    std::cout << "wrote " << reports.size() << " risk rows to " << a.out << ".csv and " << a.out
              << ".geojson\n";
    return 0;
}

struct ReportArgs {
    std::string data, config, out;
    int runs = 5;
};

int run_report(const ReportArgs& a) {
    const RunConfig cfg = load_config(a.config);
    const Dataset ds = read_dataset_csv(resolve_data_path(a.data, cfg));
    const TimingReport rep = timing_report(ds, cfg, a.runs);

    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::binary);
        if (!file) throw ParseError("cannot open for writing: " + a.out);
    }
    std::ostream& out = a.out.empty() ? std::cout : file;
    out << "learner,runs,fits_per_run,mean_seconds,std_seconds,total_wall_seconds\n";
    for (const TimingRow& row : rep.rows)
        out << to_string(row.learner) << ',' << rep.runs << ',' << 3 * kFragmentCount << ','
            << format_double(row.mean_seconds) << ',' << format_double(row.std_seconds) << ','
            << format_double(rep.total_wall_seconds) << "\n";
    if (!a.out.empty())
        std::cout << "wrote timing for " << rep.rows.size() << " learners to " << a.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"debrisk: synthetic reentry-debris datasets, landing-point learners, and "
                 "ground-risk maps"};
    app.require_subcommand(1);

    GenDataArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen-data", "Generate a synthetic reentry dataset CSV");
    CLI::Option* n_opt = gen->add_option("--n", gen_args.n, "rows to generate (default 1489)");
    CLI::Option* seed_opt = gen->add_option("--seed", gen_args.seed, "generator seed (default 1)");
    gen->add_option("--out", gen_args.out, "output dataset CSV path")->required();
    gen->add_option("--config", gen_args.config, "key=value config file");
    gen->add_option("--fragments", gen_args.fragments, "fragment set CSV (default built-in)");

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Fit the learner/target/fragment model matrix");
    train->add_option("--data", train_args.data, "dataset CSV (overrides config dataset_path)");
    train->add_option("--config", train_args.config, "key=value config file");
    train->add_option("--models-out", train_args.models_out, "output model JSON path")->required();

    EvaluateArgs eval_args;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a model set on its test split");
    evaluate->add_option("--data", eval_args.data, "dataset CSV the models were trained on")
        ->required();
    evaluate->add_option("--models", eval_args.models, "model JSON from train")->required();
    evaluate->add_option("--out", eval_args.out, "output metrics CSV path")->required();

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand("predict", "Predict per-fragment landing points");
    predict->add_option("--models", predict_args.models, "model JSON from train")->required();
    predict
        ->add_option("--features", predict_args.features,
                     "6 comma-separated entry-state values (origin_lon,origin_lat,azimuth,"
                     "initial_altitude,initial_velocity,initial_trajectory_inclination)")
        ->required();
    predict->add_option("--learner", predict_args.learner, "svr|dtr|mlp (default dtr)")
        ->check(CLI::IsMember({"svr", "dtr", "mlp"}));

    AssessArgs assess_args;
    CLI::App* assess_cmd = app.add_subcommand("assess", "Ground-risk report for landing points");
    CLI::Option* landings_opt =
        assess_cmd->add_option("--landings", assess_args.landings,
                               "landing CSV (fragment_id,landing_lon,landing_lat,landing_velocity)");
    CLI::Option* models_opt =
        assess_cmd->add_option("--models", assess_args.models, "model JSON from train");
    CLI::Option* features_opt = assess_cmd->add_option(
        "--features", assess_args.features, "6 comma-separated entry-state values");
    assess_cmd->add_option("--learner", assess_args.learner, "svr|dtr|mlp (default dtr)")
        ->check(CLI::IsMember({"svr", "dtr", "mlp"}));
    assess_cmd->add_option("--grid", assess_args.grid, "population grid CSV")->required();
    assess_cmd->add_option("--gdp", assess_args.gdp, "GDP-by-admin-id CSV")->required();
    assess_cmd->add_option("--out", assess_args.out, "output base path (.csv and .geojson added)")
        ->required();
    assess_cmd->add_option("--fragments", assess_args.fragments,
                           "fragment set CSV (default built-in)");
    landings_opt->excludes(models_opt)->excludes(features_opt);
    models_opt->needs(features_opt);
    features_opt->needs(models_opt);

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "Per-learner training-time statistics");
    report->add_option("--data", report_args.data, "dataset CSV (overrides config dataset_path)");
    report->add_option("--config", report_args.config, "key=value config file");
    report->add_option("--runs", report_args.runs, "timing repetitions (default 5)")
        ->check(CLI::Range(2, 1000));
    report->add_option("--out", report_args.out, "output CSV path (default stdout)");

    std::string config_path;
    bool dump = false;
    CLI::App* config_cmd = app.add_subcommand("config", "Show the effective configuration");
    config_cmd->add_flag("--dump", dump, "print every key=value with its effective value")
        ->required();
    config_cmd->add_option("--config", config_path, "key=value config file to load first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        gen_args.n_given = n_opt->count() > 0;
        gen_args.seed_given = seed_opt->count() > 0;
        if (gen->parsed()) return run_gen_data(gen_args);
        if (train->parsed()) return run_train(train_args);
        if (evaluate->parsed()) return run_evaluate(eval_args);
        if (predict->parsed()) return run_predict(predict_args);
        if (assess_cmd->parsed()) return run_assess(assess_args);
        if (report->parsed()) return run_report(report_args);
        if (config_cmd->parsed()) {
            std::cout << dump_config(load_config(config_path));
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
