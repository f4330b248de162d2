#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qrc/data.hpp"
#include "qrc/esn.hpp"
#include "qrc/metrics.hpp"
#include "qrc/mlp.hpp"
#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

struct ModelResult {
    std::string model;
    bool ok = false;
    std::string error;
    MetricsReport train;
    MetricsReport test;
    double duration_ms = 0.0;
};

/// Wins per test metric: how many other models this one strictly beats
/// (lower mape/nmse, higher da). Failed models are excluded from tallies.
struct WinTally {
    std::string model;
    int mape = 0;
    int nmse = 0;
    int da = 0;
};

struct ComparisonReport {
    std::vector<ModelResult> results;
    std::vector<WinTally> wins;
};

struct BenchmarkSpecs {
    ReservoirSpec qrc;
    EsnSpec esn;
    EsnSpec qiesn = qiesn_spec();
    MlpSpec mlp;
    int delta = 6;
    double lambda = 1e-4;
    double fraction = 0.6;
    std::vector<std::string> models = {"qrc", "esn", "qiesn", "mlp"};
};

/// Runs the selected models on the same chronological split of one series
/// and scores them on identical test targets. A model failure is recorded
/// in its row; the others still run.
ComparisonReport benchmark_compare(const TimeSeries& series, const BenchmarkSpecs& specs,
                                   const PipelineOptions& opts = {});

nlohmann::json comparison_to_json(const ComparisonReport& r);
ComparisonReport comparison_from_json(const nlohmann::json& j);

}  // namespace qrc
