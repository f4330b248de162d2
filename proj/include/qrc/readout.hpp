#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "qrc/data.hpp"
#include "qrc/feature.hpp"
#include "qrc/report.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// Trained linear readout. `spec_hash` ties the model to the reservoir
/// draw that produced its training features; `squared` records whether the
/// element-wise squared-feature augmentation was applied before the fit.
struct ReadoutModel {
    Eigen::VectorXd coefficients;
    double lambda = 1e-4;
    int delta = 0;
    bool squared = false;
    std::uint64_t spec_hash = 0;
    std::uint64_t seed = 0;
};

/// Column k of the result stacks the feature vectors at lags 0..delta,
/// newest first; the first `delta` columns are dropped, so an N x K input
/// becomes N(delta+1) x (K-delta). Callers trim target vectors identically.
FeatureMatrix delay_embed(const FeatureMatrix& features, int delta);

/// Appends a constant-1 row. Rejects a second append and empty matrices.
FeatureMatrix append_bias(const FeatureMatrix& features);

/// Stacks the element-wise squares of all feature rows under the originals.
FeatureMatrix append_squares(const FeatureMatrix& features);

/// Solves X = Y W^T (W W^T + lambda I)^{-1} by a self-adjoint linear solve.
/// lambda = 0 is accepted only when the system is well conditioned (the
/// solve is verified by residual and rejected as singular otherwise).
ReadoutModel ridge_fit(const FeatureMatrix& w, const std::vector<double>& y, double lambda);

/// Y_pred = X * W. A spec-hash mismatch warns on stderr and proceeds.
std::vector<double> predict(const ReadoutModel& model, const FeatureMatrix& w);

struct PipelineOptions {
    int threads = 1;
    bool include_predictions = false;
    bool squared_features = false;
    bool sum_mse = false;
};

/// Intermediate products of forecast_pipeline, for model reuse across series.
struct PipelineArtifacts {
    ReadoutModel model;
    QubitParams params;
    std::vector<double> train_predictions;
    std::vector<double> train_targets;
    std::vector<double> test_predictions;
    std::vector<double> test_targets;
};

/// Full one-step forecasting run: max-normalize, split chronologically,
/// drive the reservoir with every input once (one parameter draw), delay
/// embed with bias, ridge-fit on the training columns only, predict and
/// score both partitions. Lag windows slide across the split boundary using
/// true past inputs, so the first test prediction has full context.
/// Errors carry the failing stage name.
ForecastReport forecast_pipeline(const TimeSeries& series, const ReservoirSpec& spec, int delta,
                                 double lambda, double fraction, const PipelineOptions& opts = {},
                                 PipelineArtifacts* artifacts = nullptr);

/// Applies a trained readout to a new series using the SAME parameter draw
/// and spec as training. The series is max-normalized with its own scale
/// unless `reuse_scale` supplies the training divisor. Returns one-step
/// predictions for target indices delta+1 .. K-1 of the new series.
std::vector<double> cross_series_predict(const ReadoutModel& model, const QubitParams& params,
                                         const TimeSeries& new_series, const ReservoirSpec& spec,
                                         int threads = 1, std::optional<double> reuse_scale = {});

nlohmann::json model_to_json(const ReadoutModel& model);
ReadoutModel model_from_json(const nlohmann::json& j);

}  // namespace qrc
