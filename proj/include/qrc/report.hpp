#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrc/metrics.hpp"

namespace qrc {

/// Result of one forecasting run. `config_snapshot` holds the fully resolved
/// configuration so the run can be reproduced bit-identically; `duration_ms`
/// is informational and excluded from determinism comparisons.
struct ForecastReport {
    int n_qubits = 0;
    double delta0 = 0.0;
    double omega0 = 0.0;
    MetricsReport train;
    MetricsReport test;
    bool has_predictions = false;
    std::vector<double> test_predictions;
    std::vector<double> test_targets;
    std::vector<double> train_predictions;
    std::vector<double> train_targets;
    nlohmann::json config_snapshot;
    std::uint64_t seed = 0;
    double duration_ms = 0.0;
    std::string notes;
};

nlohmann::json metrics_to_json(const MetricsReport& m);
MetricsReport metrics_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ForecastReport& r, bool include_timing = true);
ForecastReport report_from_json(const nlohmann::json& j);

}  // namespace qrc
