#include "qrc/readout.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qrc {

namespace {

FeatureMatrix slice_columns(const FeatureMatrix& fm, Eigen::Index first, Eigen::Index count) {
    FeatureMatrix out = fm;
    out.entries = fm.entries.middleCols(first, count).eval();
    return out;
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

}  // namespace

FeatureMatrix delay_embed(const FeatureMatrix& features, int delta) {
    if (delta < 0) throw std::invalid_argument("delta must be >= 0");
    const Eigen::Index n = features.rows();
    const Eigen::Index k = features.cols();
    if (k <= delta) {
        throw std::invalid_argument("series too short: " + std::to_string(k) +
                                    " columns <= delay " + std::to_string(delta));
    }
    FeatureMatrix out;
    out.entries.resize(n * (delta + 1), k - delta);
    for (int lag = 0; lag <= delta; ++lag) {
        out.entries.middleRows(static_cast<Eigen::Index>(lag) * n, n) =
            features.entries.middleCols(delta - lag, k - delta);
    }
    out.delay = features.delay + delta;
    out.has_bias = features.has_bias;
    out.washout = std::max(0, features.washout - delta);
    out.spec_hash = features.spec_hash;
    return out;
}

FeatureMatrix append_bias(const FeatureMatrix& features) {
    if (features.has_bias) throw std::invalid_argument("bias row already present");
    if (features.cols() == 0) throw std::invalid_argument("degenerate feature matrix: no columns");
    FeatureMatrix out = features;
    out.entries.conservativeResize(features.rows() + 1, Eigen::NoChange);
    out.entries.row(features.rows()).setOnes();
    out.has_bias = true;
    return out;
}

FeatureMatrix append_squares(const FeatureMatrix& features) {
    if (features.has_bias) throw std::invalid_argument("square augmentation must precede the bias row");
    FeatureMatrix out = features;
    out.entries.conservativeResize(2 * features.rows(), Eigen::NoChange);
    out.entries.bottomRows(features.rows()) =
        features.entries.array().square().matrix();
    return out;
}

ReadoutModel ridge_fit(const FeatureMatrix& w, const std::vector<double>& y, double lambda) {
    const Eigen::Index f = w.rows();
    const Eigen::Index k = w.cols();
    if (k < 1) throw std::invalid_argument("no training columns");
    if (static_cast<Eigen::Index>(y.size()) != k) {
        throw std::invalid_argument("target length " + std::to_string(y.size()) +
                                    " does not match " + std::to_string(k) + " columns");
    }
    if (lambda < 0.0 || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be >= 0");
    if (!w.entries.allFinite()) throw std::invalid_argument("non-finite feature entries");
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), k);
    if (!yv.allFinite()) throw std::invalid_argument("non-finite targets");

    Eigen::MatrixXd gram = w.entries * w.entries.transpose();
    gram.diagonal().array() += lambda;
    const Eigen::VectorXd rhs = w.entries * yv;
    const Eigen::VectorXd x = gram.ldlt().solve(rhs);

    const double residual = (gram * x - rhs).norm();
    const double scale = std::max(1.0, rhs.norm());
    if (!x.allFinite() || std::isnan(residual) || residual > 1e-8 * scale) {
        throw std::runtime_error("singular readout system (residual " + std::to_string(residual) +
                                 "); increase lambda");
    }

    ReadoutModel model;
    model.coefficients = x;
    model.lambda = lambda;
    model.delta = w.delay;
    model.spec_hash = w.spec_hash;
    return model;
}

std::vector<double> predict(const ReadoutModel& model, const FeatureMatrix& w) {
    if (model.coefficients.size() != w.rows()) {
        throw std::invalid_argument("feature rows " + std::to_string(w.rows()) +
                                    " do not match model size " +
                                    std::to_string(model.coefficients.size()));
    }
    if (model.spec_hash != 0 && w.spec_hash != 0 && model.spec_hash != w.spec_hash) {
        std::cerr << "warning: readout model applied to features from a different reservoir draw\n";
    }
    const Eigen::VectorXd yhat = w.entries.transpose() * model.coefficients;
    return {yhat.data(), yhat.data() + yhat.size()};
}

ForecastReport forecast_pipeline(const TimeSeries& series, const ReservoirSpec& spec, int delta,
                                 double lambda, double fraction, const PipelineOptions& opts,
                                 PipelineArtifacts* artifacts) {
    const auto t0 = std::chrono::steady_clock::now();
    spec.validate();
    if (delta < 0) throw std::invalid_argument("delta must be >= 0");

    const TimeSeries norm = stage("normalize", [&] { return normalize_max(series); });
    const DatasetSplit split = stage("split", [&] { return split_train_test(norm, fraction); });
    const auto n_train = static_cast<Eigen::Index>(split.train.size());

    auto [inputs, targets] = stage("targets", [&] { return make_targets(norm); });

    // Embedded column c corresponds to input index k = c + delta and predicts
    // targets[k] = u(t_{k+1}). Training covers k in [delta, n_train-2] so every
    // fitted target lies inside the training partition; the remaining columns
    // predict exactly the test values u(t_{n_train})..u(t_{K-1}).
    const Eigen::Index n_train_cols = n_train - 1 - delta;
    const Eigen::Index n_test_cols = static_cast<Eigen::Index>(norm.size()) - n_train;
    if (n_train_cols < 2 || n_test_cols < 2) {
        throw std::invalid_argument("series too short for split + delay: " +
                                    std::to_string(n_train_cols) + " train and " +
                                    std::to_string(n_test_cols) + " test columns");
    }

    Rng stream(spec.seed);
    const QubitParams params = sample_qubit_params(spec, stream);
    const FeatureMatrix raw = stage("features", [&] {
        return compute_features_with(params, inputs, spec, opts.threads);
    });

    FeatureMatrix embedded = stage("embed", [&] {
        FeatureMatrix e = delay_embed(raw, delta);
        if (opts.squared_features) e = append_squares(e);
        return append_bias(e);
    });

    const FeatureMatrix w_train = slice_columns(embedded, 0, n_train_cols);
    const FeatureMatrix w_test = slice_columns(embedded, n_train_cols, n_test_cols);
    const std::vector<double> y_train(targets.begin() + delta,
                                      targets.begin() + delta + n_train_cols);
    const std::vector<double> y_test(targets.begin() + delta + n_train_cols, targets.end());

    ReadoutModel model = stage("fit", [&] { return ridge_fit(w_train, y_train, lambda); });
    model.seed = spec.seed;
    model.squared = opts.squared_features;

    const std::vector<double> pred_train = stage("predict", [&] { return predict(model, w_train); });
    const std::vector<double> pred_test = stage("predict", [&] { return predict(model, w_test); });

    ForecastReport report;
    report.n_qubits = spec.n_qubits;
    report.delta0 = spec.delta0;
    report.omega0 = spec.omega0;
    report.seed = spec.seed;
    report.train = stage("metrics", [&] { return evaluate(y_train, pred_train, opts.sum_mse); });
    report.test = stage("metrics", [&] { return evaluate(y_test, pred_test, opts.sum_mse); });
    if (report.test.flat_series || report.train.flat_series) {
        report.notes = "flat series: direction accuracy is all ties";
    }
    if (opts.include_predictions) {
        report.has_predictions = true;
        report.train_predictions = pred_train;
        report.train_targets = y_train;
        report.test_predictions = pred_test;
        report.test_targets = y_test;
    }
    if (artifacts) {
        artifacts->model = model;
        artifacts->params = params;
        artifacts->train_predictions = pred_train;
        artifacts->train_targets = y_train;
        artifacts->test_predictions = pred_test;
        artifacts->test_targets = y_test;
    }
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<double> cross_series_predict(const ReadoutModel& model, const QubitParams& params,
                                         const TimeSeries& new_series, const ReservoirSpec& spec,
                                         int threads, std::optional<double> reuse_scale) {
    if (new_series.size() < static_cast<std::size_t>(model.delta) + 2) {
        throw std::invalid_argument("series shorter than delta+2");
    }
    TimeSeries norm;
    if (reuse_scale) {
        if (!(*reuse_scale > 0.0)) throw std::invalid_argument("reused scale must be > 0");
        norm = new_series;
        for (double& v : norm.values) v /= *reuse_scale;
        norm.scale = *reuse_scale;
    } else {
        norm = normalize_max(new_series);
    }

    auto [inputs, targets] = make_targets(norm);
    (void)targets;
    const FeatureMatrix raw = compute_features_with(params, inputs, spec, threads);
    FeatureMatrix embedded = delay_embed(raw, model.delta);
    if (model.squared) embedded = append_squares(embedded);
    embedded = append_bias(embedded);
    return predict(model, embedded);
}

nlohmann::json model_to_json(const ReadoutModel& model) {
    nlohmann::json j;
    j["coefficients"] = std::vector<double>(model.coefficients.data(),
                                            model.coefficients.data() + model.coefficients.size());
    j["lambda"] = model.lambda;
    j["delta"] = model.delta;
    j["squared"] = model.squared;
    j["spec_hash"] = model.spec_hash;
    j["seed"] = model.seed;
    return j;
}

ReadoutModel model_from_json(const nlohmann::json& j) {
    ReadoutModel model;
    const auto coeffs = j.at("coefficients").get<std::vector<double>>();
    model.coefficients = Eigen::Map<const Eigen::VectorXd>(coeffs.data(),
                                                           static_cast<Eigen::Index>(coeffs.size()));
    model.lambda = j.at("lambda").get<double>();
    model.delta = j.at("delta").get<int>();
    model.squared = j.value("squared", false);
    model.spec_hash = j.at("spec_hash").get<std::uint64_t>();
    model.seed = j.at("seed").get<std::uint64_t>();
    return model;
}

}  // namespace qrc
