#include "debrisk/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "debrisk/errors.hpp"
#include "debrisk/rng.hpp"

namespace debrisk {

namespace {

// Stable per-cell index used to derive seeds; independent of the order the
// learners appear in the config.
std::uint64_t cell_index(Learner l, Target t, int fragment_id) {
    return static_cast<std::uint64_t>(l) * 21 + static_cast<std::uint64_t>(t) * 7 +
           static_cast<std::uint64_t>(fragment_id - 1);
}

struct CellData {
    std::vector<std::vector<double>> x_train, x_test;
    std::vector<double> y_train, y_test;
};

CellData gather(const Dataset& ds, const Split& sp, Target t, int fragment_id) {
    CellData d;
    d.x_train.reserve(sp.train.size());
    d.y_train.reserve(sp.train.size());
    d.x_test.reserve(sp.test.size());
    d.y_test.reserve(sp.test.size());
    for (std::size_t i : sp.train) {
        const auto a = ds.rows[i].x.to_array();
        d.x_train.emplace_back(a.begin(), a.end());
        d.y_train.push_back(target_of(ds.rows[i].labels[fragment_id - 1], t));
    }
    for (std::size_t i : sp.test) {
        const auto a = ds.rows[i].x.to_array();
        d.x_test.emplace_back(a.begin(), a.end());
        d.y_test.push_back(target_of(ds.rows[i].labels[fragment_id - 1], t));
    }
    return d;
}

AnyModel fit_one(Learner l, const CellData& d, const ModelHyperparams& hp, std::uint64_t seed) {
    switch (l) {
    case Learner::Svr: return svr_fit(d.x_train, d.y_train, hp);
    case Learner::Dtr: return dtr_fit(d.x_train, d.y_train, hp);
    case Learner::Mlp: return mlp_fit(d.x_train, d.y_train, hp, seed);
    }
    throw DomainError("unreachable learner");
}

EvalReport evaluate_cell(const AnyModel& m, const CellData& d, Target t) {
    std::vector<double> yhat(d.y_test.size());
    for (std::size_t i = 0; i < d.x_test.size(); ++i)
        yhat[i] = std::visit([&](const auto& model) { return model.predict(d.x_test[i]); }, m);
    EvalReport rep;
    rep.n_test = d.y_test.size();
    rep.mse = mse(d.y_test, yhat);
    rep.r2 = r2_score(d.y_test, yhat);
    long double abs_sum = 0.0L;
    for (std::size_t i = 0; i < yhat.size(); ++i) abs_sum += std::abs(yhat[i] - d.y_test[i]);
    const double mae = static_cast<double>(abs_sum / static_cast<long double>(yhat.size()));
    switch (t) {
    case Target::Lon: rep.mean_abs_error_lon = mae; break;
    case Target::Lat: rep.mean_abs_error_lat = mae; break;
    case Target::Vel: rep.mean_abs_error_vel = mae; break;
    }
    return rep;
}

// The documented retry perturbation, applied cumulatively per attempt.
ModelHyperparams perturb(Learner l, ModelHyperparams hp) {
    switch (l) {
    case Learner::Dtr:
        if (hp.dtr_max_depth > 0) hp.dtr_max_depth += 1;
        break;
    case Learner::Mlp: hp.mlp_max_iter *= 2; break;
    case Learner::Svr: hp.svr_c *= 2.0; break;
    }
    return hp;
}

double sample_std(const std::vector<double>& xs, double mean) {
    long double acc = 0.0L;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(static_cast<double>(acc / static_cast<long double>(xs.size() - 1)));
}

} // namespace

Split split_dataset(const Dataset& d, std::uint64_t seed, double fraction) {
    const std::size_t n = d.rows.size();
    if (n < 10) throw TooFewRowsError("split needs at least 10 rows, got " + std::to_string(n));
    if (!(fraction > 0.0 && fraction < 1.0))
        throw RangeError("train_fraction", "must be strictly between 0 and 1");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    rng.shuffle(idx);
    std::size_t n_train = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(n)));
    if (n_train == 0) n_train = 1;
    if (n_train >= n) n_train = n - 1;
    Split sp;
    sp.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    sp.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    return sp;
}

EvalReport evaluate_cell(const TrainedCell& cell, const Dataset& ds,
                         const std::vector<std::size_t>& rows) {
    for (std::size_t i : rows)
        if (i >= ds.rows.size())
            throw RangeError("rows", "index " + std::to_string(i) + " outside dataset of " +
                                         std::to_string(ds.rows.size()) + " rows");
    Split sp;
    sp.test = rows;
    const CellData data = gather(ds, sp, cell.target, cell.fragment_id);
    return evaluate_cell(cell.model, data, cell.target);
}

RunResult run_all(const Dataset& ds, const RunConfig& cfg) {
    cfg.validate();
    const Split sp = split_dataset(ds, cfg.split_seed, cfg.train_fraction);

    RunResult out;
    out.models.split_seed = cfg.split_seed;
    out.models.train_fraction = cfg.train_fraction;
    out.models.dataset_rows = ds.rows.size();

    // Dedup while preserving the configured order.
    std::vector<Learner> learners;
    for (Learner l : cfg.learners) {
        bool seen = false;
        for (Learner k : learners) seen = seen || k == l;
        if (!seen) learners.push_back(l);
    }

    constexpr Target kTargets[] = {Target::Lon, Target::Lat, Target::Vel};
    for (Learner l : learners) {
        for (Target t : kTargets) {
            for (int f = 1; f <= kFragmentCount; ++f) {
                CellOutcome cell;
                cell.learner = l;
                cell.target = t;
                cell.fragment_id = f;
                try {
                    const CellData data = gather(ds, sp, t, f);
                    const double threshold = cfg.error_threshold(t);
                    ModelHyperparams hp = cfg.hyperparams;
                    const std::uint64_t seed = mix_seed(cfg.split_seed, cell_index(l, t, f));
                    AnyModel model = fit_one(l, data, hp, seed);
                    EvalReport rep = evaluate_cell(model, data, t);
                    cell.attempt_evals.push_back(rep);
                    while (rep.mse > threshold && cell.attempts <= cfg.max_retries) {
                        hp = perturb(l, hp);
                        cell.attempts += 1;
                        model = fit_one(l, data, hp, seed);
                        rep = evaluate_cell(model, data, t);
                        cell.attempt_evals.push_back(rep);
                    }
                    cell.eval = rep;
                    cell.ok = true;
                    TrainedCell trained;
                    trained.learner = l;
                    trained.target = t;
                    trained.fragment_id = f;
                    trained.attempts = cell.attempts;
                    trained.model = std::move(model);
                    out.models.cells.push_back(std::move(trained));
                } catch (const Error& e) {
                    cell.ok = false;
                    cell.error = e.what();
                }
                out.outcomes.push_back(std::move(cell));
            }
        }
    }
    return out;
}

TimingReport timing_report(const Dataset& ds, const RunConfig& cfg, int runs) {
    if (runs < 2) throw RangeError("runs", "timing needs at least 2 runs");
    cfg.validate();
    const Split sp = split_dataset(ds, cfg.split_seed, cfg.train_fraction);
    constexpr Target kTargets[] = {Target::Lon, Target::Lat, Target::Vel};

    using Clock = std::chrono::steady_clock;
    const auto wall0 = Clock::now();
    std::vector<std::vector<double>> samples(cfg.learners.size());
    for (int r = 0; r < runs; ++r) {
        for (std::size_t li = 0; li < cfg.learners.size(); ++li) {
            const Learner l = cfg.learners[li];
            const auto t0 = Clock::now();
            for (Target t : kTargets) {
                for (int f = 1; f <= kFragmentCount; ++f) {
                    const CellData data = gather(ds, sp, t, f);
                    const std::uint64_t seed = mix_seed(cfg.split_seed, cell_index(l, t, f));
                    fit_one(l, data, cfg.hyperparams, seed);
                }
            }
            const auto t1 = Clock::now();
            samples[li].push_back(std::chrono::duration<double>(t1 - t0).count());
        }
    }
    const auto wall1 = Clock::now();

    TimingReport rep;
    rep.runs = runs;
    rep.total_wall_seconds = std::chrono::duration<double>(wall1 - wall0).count();
    for (std::size_t li = 0; li < cfg.learners.size(); ++li) {
        TimingRow row;
        row.learner = cfg.learners[li];
        const auto& xs = samples[li];
        row.mean_seconds = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        row.std_seconds = sample_std(xs, row.mean_seconds);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace debrisk
