#include "qrc/report.hpp"

#include <cmath>
#include <limits>

namespace qrc {

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double null_to_nan(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

MapeCategory category_from_name(const std::string& name) {
    if (name == "excellent") return MapeCategory::Excellent;
    if (name == "good") return MapeCategory::Good;
    if (name == "reasonable") return MapeCategory::Reasonable;
    return MapeCategory::Poor;
}

}  // namespace

nlohmann::json metrics_to_json(const MetricsReport& m) {
    nlohmann::json j;
    j["mse"] = finite_or_null(m.mse);
    j["nmse"] = finite_or_null(m.nmse);
    j["rmse"] = finite_or_null(m.rmse);
    j["mape_percent"] = finite_or_null(m.mape_percent);
    j["mape_category"] =
        std::isfinite(m.mape_percent) ? nlohmann::json(mape_category_name(m.mape_category))
                                      : nlohmann::json(nullptr);
    j["da"] = finite_or_null(m.da);
    j["n_points"] = m.n_points;
    j["n_ties"] = m.n_ties;
    j["n_mape_excluded"] = m.n_mape_excluded;
    j["flat_series"] = m.flat_series;
    return j;
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
    MetricsReport m;
    m.mse = null_to_nan(j.at("mse"));
    m.nmse = null_to_nan(j.at("nmse"));
    m.rmse = null_to_nan(j.at("rmse"));
    m.mape_percent = null_to_nan(j.at("mape_percent"));
    if (j.at("mape_category").is_string()) {
        m.mape_category = category_from_name(j.at("mape_category").get<std::string>());
    }
    m.da = null_to_nan(j.at("da"));
    m.n_points = j.at("n_points").get<int>();
    m.n_ties = j.at("n_ties").get<int>();
    m.n_mape_excluded = j.at("n_mape_excluded").get<int>();
    m.flat_series = j.at("flat_series").get<bool>();
    return m;
}

nlohmann::json report_to_json(const ForecastReport& r, bool include_timing) {
    nlohmann::json j;
    j["n_qubits"] = r.n_qubits;
    j["delta0"] = r.delta0;
    j["omega0"] = r.omega0;
    j["train"] = metrics_to_json(r.train);
    j["test"] = metrics_to_json(r.test);
    j["seed"] = r.seed;
    j["notes"] = r.notes;
    j["config"] = r.config_snapshot;
    if (r.has_predictions) {
        j["predictions"] = {{"train_predictions", r.train_predictions},
                            {"train_targets", r.train_targets},
                            {"test_predictions", r.test_predictions},
                            {"test_targets", r.test_targets}};
    }
    if (include_timing) j["duration_ms"] = r.duration_ms;
    return j;
}

ForecastReport report_from_json(const nlohmann::json& j) {
    ForecastReport r;
    r.n_qubits = j.at("n_qubits").get<int>();
    r.delta0 = j.at("delta0").get<double>();
    r.omega0 = j.at("omega0").get<double>();
    r.train = metrics_from_json(j.at("train"));
    r.test = metrics_from_json(j.at("test"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.notes = j.at("notes").get<std::string>();
    r.config_snapshot = j.at("config");
    if (j.contains("predictions")) {
        const nlohmann::json& p = j.at("predictions");
        r.has_predictions = true;
        r.train_predictions = p.at("train_predictions").get<std::vector<double>>();
        r.train_targets = p.at("train_targets").get<std::vector<double>>();
        r.test_predictions = p.at("test_predictions").get<std::vector<double>>();
        r.test_targets = p.at("test_targets").get<std::vector<double>>();
    }
    if (j.contains("duration_ms")) r.duration_ms = j.at("duration_ms").get<double>();
    return r;
}

}  // namespace qrc
