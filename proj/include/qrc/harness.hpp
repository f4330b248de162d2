#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrc/benchmark.hpp"
#include "qrc/config.hpp"
#include "qrc/moments.hpp"
#include "qrc/report.hpp"

namespace qrc {

/// Loads the configured CSV (with optional session filter) or generates the
/// configured synthetic series with the global seed.
TimeSeries resolve_input(const RunConfig& c);

/// Forecast-cost heuristic for the large-N guardrail: samples * steps * dim^3.
double estimated_cost(int n_qubits, long long samples, int n_steps);

/// Runs the pipeline and writes report.json plus predictions.csv
/// (index, actual, predicted, partition) under out_dir.
ForecastReport run_forecast(const RunConfig& c);

struct SweepRow {
    int n_qubits = 0;
    int delta0 = 0;
    int omega0 = 0;
    bool ok = false;
    std::string error;
    MetricsReport test;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // grid order: n_qubits, then delta0, then omega0
    int n_failures = 0;
    std::optional<SweepRow> best_da;
    std::optional<SweepRow> best_mse;
};

/// One forecast per grid point with a per-point seed derived by hashing
/// (base seed, N, delta0, omega0), so scheduling cannot change results.
/// Writes sweep.csv, sweep_best.json, and sweep_failures.csv.
SweepResult run_sweep(const RunConfig& c);

struct CrossDayRow {
    std::string label;  // training series
    std::string date;   // future series
    double da = 0.0;
    int n_points = 0;
    int ties = 0;
    bool ok = false;
    std::string error;
};

/// Trains once on the configured input, then scores direction accuracy on
/// each future series without retraining. Writes cross_day.csv.
std::vector<CrossDayRow> run_cross_day(const RunConfig& c);

struct SmrSeriesResult {
    MomentProfile profile;
    bool ok = false;
    std::string error;
    std::string tail;
};

struct SmrResult {
    std::vector<SmrSeriesResult> series;
    std::optional<CorrelationResult> full;
    std::optional<CorrelationResult> high;
    std::string notice;
};

/// Tail profiles per series plus pairwise correlations over the full order
/// list and the high-order subset. Writes smr_profiles.csv, correlation
/// CSVs when two or more series are given, and smr_summary.json.
SmrResult run_smr(const RunConfig& c);

/// Wraps benchmark_compare; writes benchmark.json and benchmark.csv.
ComparisonReport run_benchmark(const RunConfig& c);

/// Generates the configured synthetic series and writes it as a CSV.
/// Returns the written path.
std::string run_synth(const RunConfig& c);

}  // namespace qrc
