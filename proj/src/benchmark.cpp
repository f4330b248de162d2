#include "qrc/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "qrc/report.hpp"

namespace qrc {

namespace {

struct ScoredRun {
    MetricsReport train;
    MetricsReport test;
};

FeatureMatrix slice_columns(const FeatureMatrix& fm, Eigen::Index first, Eigen::Index count) {
    FeatureMatrix out = fm;
    out.entries = fm.entries.middleCols(first, count).eval();
    return out;
}

/// ESN/QIESN forecasting: reservoir states over the inputs, bias row, ridge
/// fit on training columns past the washout, scored on the same test targets
/// as the quantum path.
ScoredRun run_esn_model(const TimeSeries& series, const EsnSpec& esn, double lambda,
                        double fraction, bool sum_mse) {
    const TimeSeries norm = normalize_max(series);
    const DatasetSplit split = split_train_test(norm, fraction);
    const auto n_train = static_cast<Eigen::Index>(split.train.size());
    auto [inputs, targets] = make_targets(norm);

    const FeatureMatrix states = append_bias(esn_features(inputs, esn));
    const Eigen::Index washout = states.washout;
    const Eigen::Index n_train_cols = n_train - 1 - washout;
    const Eigen::Index n_test_cols = static_cast<Eigen::Index>(norm.size()) - n_train;
    if (n_train_cols < 2 || n_test_cols < 2) {
        throw std::invalid_argument("series too short for split + washout");
    }

    const FeatureMatrix w_train = slice_columns(states, washout, n_train_cols);
    const FeatureMatrix w_test = slice_columns(states, washout + n_train_cols, n_test_cols);
    const std::vector<double> y_train(targets.begin() + washout,
                                      targets.begin() + washout + n_train_cols);
    const std::vector<double> y_test(targets.begin() + washout + n_train_cols, targets.end());

    const ReadoutModel model = ridge_fit(w_train, y_train, lambda);
    ScoredRun run;
    run.train = evaluate(y_train, predict(model, w_train), sum_mse);
    run.test = evaluate(y_test, predict(model, w_test), sum_mse);
    return run;
}

/// MLP forecasting over sliding windows; the window of true past values
/// ending at t_k predicts u(t_{k+1}), so test windows cover exactly the
/// test-partition targets.
ScoredRun run_mlp_model(const TimeSeries& series, const MlpSpec& mlp, double fraction,
                        bool sum_mse) {
    const TimeSeries norm = normalize_max(series);
    const DatasetSplit split = split_train_test(norm, fraction);
    const auto n_train = static_cast<Eigen::Index>(split.train.size());

    const int window = mlp.layer_sizes.front();
    const WindowSet ws = delay_windows(norm.values, window);
    const Eigen::Index n_train_cols = n_train - window;
    const Eigen::Index n_test_cols = ws.inputs.cols() - n_train_cols;
    if (n_train_cols < 4 || n_test_cols < 2) {
        throw std::invalid_argument("series too short for the window size and split");
    }

    const MlpModel model =
        mlp_train(ws.inputs.leftCols(n_train_cols), ws.targets.head(n_train_cols), mlp);

    auto score = [&](Eigen::Index first, Eigen::Index count) {
        const Eigen::VectorXd pred = mlp_predict(model, ws.inputs.middleCols(first, count));
        const std::vector<double> yhat(pred.data(), pred.data() + pred.size());
        const std::vector<double> y(ws.targets.data() + first, ws.targets.data() + first + count);
        return evaluate(y, yhat, sum_mse);
    };
    ScoredRun run;
    run.train = score(0, n_train_cols);
    run.test = score(n_train_cols, n_test_cols);
    return run;
}

}  // namespace

ComparisonReport benchmark_compare(const TimeSeries& series, const BenchmarkSpecs& specs,
                                   const PipelineOptions& opts) {
    ComparisonReport report;
    for (const std::string& name : specs.models) {
        ModelResult result;
        result.model = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            if (name == "qrc") {
                const ForecastReport fr = forecast_pipeline(series, specs.qrc, specs.delta,
                                                            specs.lambda, specs.fraction, opts);
                result.train = fr.train;
                result.test = fr.test;
            } else if (name == "esn") {
                const ScoredRun run =
                    run_esn_model(series, specs.esn, specs.lambda, specs.fraction, opts.sum_mse);
                result.train = run.train;
                result.test = run.test;
            } else if (name == "qiesn") {
                const ScoredRun run =
                    run_esn_model(series, specs.qiesn, specs.lambda, specs.fraction, opts.sum_mse);
                result.train = run.train;
                result.test = run.test;
            } else if (name == "mlp") {
                const ScoredRun run = run_mlp_model(series, specs.mlp, specs.fraction, opts.sum_mse);
                result.train = run.train;
                result.test = run.test;
            } else {
                throw std::invalid_argument("unknown model '" + name + "'");
            }
            result.ok = true;
        } catch (const std::exception& e) {
            result.error = e.what();
        }
        result.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        report.results.push_back(std::move(result));
    }

    for (const ModelResult& a : report.results) {
        if (!a.ok) continue;
        WinTally tally;
        tally.model = a.model;
        for (const ModelResult& b : report.results) {
            if (!b.ok || &a == &b) continue;
            if (a.test.mape_percent < b.test.mape_percent) ++tally.mape;
            if (a.test.nmse < b.test.nmse) ++tally.nmse;
            if (a.test.da > b.test.da) ++tally.da;
        }
        report.wins.push_back(std::move(tally));
    }
    return report;
}

nlohmann::json comparison_to_json(const ComparisonReport& r) {
    nlohmann::json results = nlohmann::json::array();
    for (const ModelResult& m : r.results) {
        nlohmann::json row;
        row["model"] = m.model;
        row["ok"] = m.ok;
        row["error"] = m.error;
        row["train"] = metrics_to_json(m.train);
        row["test"] = metrics_to_json(m.test);
        row["duration_ms"] = m.duration_ms;
        results.push_back(std::move(row));
    }
    nlohmann::json wins = nlohmann::json::array();
    for (const WinTally& w : r.wins) {
        wins.push_back({{"model", w.model}, {"mape", w.mape}, {"nmse", w.nmse}, {"da", w.da}});
    }
    return {{"results", results}, {"wins", wins}};
}

ComparisonReport comparison_from_json(const nlohmann::json& j) {
    ComparisonReport r;
    for (const nlohmann::json& row : j.at("results")) {
        ModelResult m;
        m.model = row.at("model").get<std::string>();
        m.ok = row.at("ok").get<bool>();
        m.error = row.at("error").get<std::string>();
        m.train = metrics_from_json(row.at("train"));
        m.test = metrics_from_json(row.at("test"));
        m.duration_ms = row.at("duration_ms").get<double>();
        r.results.push_back(std::move(m));
    }
    for (const nlohmann::json& row : j.at("wins")) {
        WinTally w;
        w.model = row.at("model").get<std::string>();
        w.mape = row.at("mape").get<int>();
        w.nmse = row.at("nmse").get<int>();
        w.da = row.at("da").get<int>();
        r.wins.push_back(std::move(w));
    }
    return r;
}

}  // namespace qrc
