#include "qrc/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "qrc/parallel.hpp"

namespace qrc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void write_json(const std::string& dir, const std::string& name, const nlohmann::json& j) {
    auto out = open_out(dir, name);
    out << j.dump(2) << '\n';
}

Session session_from_name(const std::string& name) {
    if (name == "pre") return Session::PreMarket;
    if (name == "in") return Session::InMarket;
    return Session::AfterMarket;
}

}  // namespace

TimeSeries resolve_input(const RunConfig& c) {
    if (!c.input_csv.empty()) {
        TimeSeries ts = load_csv(c.input_csv);
        if (!c.session.empty()) ts = filter_session(ts, session_from_name(c.session));
        return ts;
    }
    return gen_synthetic(c.synthetic, c.synthetic_params, c.seed);
}

double estimated_cost(int n_qubits, long long samples, int n_steps) {
    const double dim = static_cast<double>(1 << n_qubits);
    return static_cast<double>(samples) * n_steps * dim * dim * dim;
}

ForecastReport run_forecast(const RunConfig& c) {
    const TimeSeries series = resolve_input(c);
    PipelineOptions opts;
    opts.threads = c.threads;
    opts.include_predictions = c.include_predictions;
    opts.squared_features = c.squared_features;
    opts.sum_mse = c.sum_mse;

    PipelineArtifacts artifacts;
    ForecastReport report =
        forecast_pipeline(series, c.reservoir, c.delta, c.lambda, c.fraction, opts, &artifacts);
    report.config_snapshot = config_to_json(c);
    write_json(c.out_dir, "report.json", report_to_json(report));

    // Plot data: one row per predicted target, indexed by its position in
    // the source series.
    auto out = open_out(c.out_dir, "predictions.csv");
    out << "index,actual,predicted,partition\n";
    const std::size_t first_train = static_cast<std::size_t>(c.delta) + 1;
    for (std::size_t i = 0; i < artifacts.train_targets.size(); ++i) {
        out << first_train + i << ',' << fmt(artifacts.train_targets[i]) << ','
            << fmt(artifacts.train_predictions[i]) << ",train\n";
    }
    const std::size_t first_test = first_train + artifacts.train_targets.size();
    for (std::size_t i = 0; i < artifacts.test_targets.size(); ++i) {
        out << first_test + i << ',' << fmt(artifacts.test_targets[i]) << ','
            << fmt(artifacts.test_predictions[i]) << ",test\n";
    }
    return report;
}

SweepResult run_sweep(const RunConfig& c) {
    const TimeSeries series = resolve_input(c);

    std::vector<SweepRow> rows;
    for (int n : c.sweep_n_qubits) {
        for (int d0 : c.sweep_delta0) {
            for (int o0 : c.sweep_omega0) {
                SweepRow row;
                row.n_qubits = n;
                row.delta0 = d0;
                row.omega0 = o0;
                rows.push_back(row);
            }
        }
    }

    PipelineOptions opts;
    opts.threads = 1;  // the grid itself is the parallel axis
    opts.sum_mse = c.sum_mse;
    parallel_for(rows.size(), c.threads, [&](std::size_t i) {
        SweepRow& row = rows[i];
        ReservoirSpec spec = c.reservoir;
        spec.n_qubits = row.n_qubits;
        spec.delta0 = row.delta0;
        spec.omega0 = row.omega0;
        std::uint64_t h = mix64(c.seed);
        h = mix64(h ^ static_cast<std::uint64_t>(row.n_qubits));
        h = mix64(h ^ static_cast<std::uint64_t>(row.delta0));
        h = mix64(h ^ static_cast<std::uint64_t>(row.omega0));
        spec.seed = h;
        try {
            const ForecastReport r =
                forecast_pipeline(series, spec, c.delta, c.lambda, c.fraction, opts);
            row.test = r.test;
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    SweepResult result;
    result.rows = std::move(rows);
    for (const SweepRow& row : result.rows) {
        if (!row.ok) {
            ++result.n_failures;
            continue;
        }
        if (!result.best_da || row.test.da > result.best_da->test.da) result.best_da = row;
        if (!result.best_mse || row.test.mse < result.best_mse->test.mse) result.best_mse = row;
    }

    auto csv = open_out(c.out_dir, "sweep.csv");
    csv << "n_qubits,delta0,omega0,mse,nmse,rmse,mape,da\n";
    for (const SweepRow& row : result.rows) {
        if (!row.ok) continue;
        csv << row.n_qubits << ',' << row.delta0 << ',' << row.omega0 << ','
            << fmt(row.test.mse) << ',' << fmt(row.test.nmse) << ',' << fmt(row.test.rmse) << ','
            << fmt(row.test.mape_percent) << ',' << fmt(row.test.da) << '\n';
    }

    auto failures = open_out(c.out_dir, "sweep_failures.csv");
    failures << "n_qubits,delta0,omega0,error\n";
    for (const SweepRow& row : result.rows) {
        if (row.ok) continue;
        std::string msg = row.error;
        for (char& ch : msg) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        failures << row.n_qubits << ',' << row.delta0 << ',' << row.omega0 << ',' << msg << '\n';
    }

    nlohmann::json best;
    auto row_json = [](const SweepRow& row) {
        return nlohmann::json{{"n_qubits", row.n_qubits},
                              {"delta0", row.delta0},
                              {"omega0", row.omega0},
                              {"test", metrics_to_json(row.test)}};
    };
    best["best_da"] = result.best_da ? row_json(*result.best_da) : nlohmann::json(nullptr);
    best["best_mse"] = result.best_mse ? row_json(*result.best_mse) : nlohmann::json(nullptr);
    best["failures"] = result.n_failures;
    write_json(c.out_dir, "sweep_best.json", best);
    return result;
}

std::vector<CrossDayRow> run_cross_day(const RunConfig& c) {
    const TimeSeries train_series = resolve_input(c);

    PipelineOptions opts;
    opts.threads = c.threads;
    opts.sum_mse = c.sum_mse;
    PipelineArtifacts artifacts;
    forecast_pipeline(train_series, c.reservoir, c.delta, c.lambda, c.fraction, opts, &artifacts);
    const std::optional<double> reuse =
        c.reuse_train_scale ? normalize_max(train_series).scale : std::optional<double>{};

    std::vector<CrossDayRow> rows;
    for (const std::string& path : c.future_csvs) {
        CrossDayRow row;
        row.label = train_series.label;
        try {
            TimeSeries fut = load_csv(path);
            if (!c.session.empty()) fut = filter_session(fut, session_from_name(c.session));
            row.date = fut.label;
            TimeSeries norm = fut;
            if (reuse) {
                for (double& v : norm.values) v /= *reuse;
            } else {
                norm = normalize_max(fut);
            }
            const std::vector<double> pred = cross_series_predict(
                artifacts.model, artifacts.params, fut, c.reservoir, c.threads, reuse);
            const std::vector<double> actual(norm.values.begin() + c.delta + 1, norm.values.end());
            const DaResult da = direction_accuracy(actual, pred);
            row.da = da.da;
            row.ties = da.ties;
            row.n_points = static_cast<int>(actual.size());
            row.ok = true;
        } catch (const std::exception& e) {
            if (row.date.empty()) row.date = std::filesystem::path(path).stem().string();
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }

    auto csv = open_out(c.out_dir, "cross_day.csv");
    csv << "label,date,da,n_points,ties\n";
    for (const CrossDayRow& row : rows) {
        if (!row.ok) continue;
        csv << row.label << ',' << row.date << ',' << fmt(row.da) << ',' << row.n_points << ','
            << row.ties << '\n';
    }
    for (const CrossDayRow& row : rows) {
        if (!row.ok) std::cerr << "cross-day " << row.date << " failed: " << row.error << '\n';
    }
    return rows;
}

SmrResult run_smr(const RunConfig& c) {
    std::vector<TimeSeries> inputs;
    if (c.smr_csvs.empty()) {
        inputs.push_back(resolve_input(c));
    } else {
        for (const std::string& path : c.smr_csvs) {
            TimeSeries ts = load_csv(path);
            if (!c.session.empty()) ts = filter_session(ts, session_from_name(c.session));
            inputs.push_back(std::move(ts));
        }
    }

    SmrResult result;
    for (const TimeSeries& ts : inputs) {
        SmrSeriesResult sr;
        sr.profile.label = ts.label;
        try {
            sr.profile = smr_profile(ts.values, c.smr_orders, ts.label);
            sr.tail = tail_class_name(classify_tail(sr.profile, c.tail_slack));
            sr.ok = true;
        } catch (const std::exception& e) {
            sr.error = e.what();
        }
        result.series.push_back(std::move(sr));
    }

    std::vector<MomentProfile> good;
    for (const SmrSeriesResult& sr : result.series) {
        if (sr.ok) good.push_back(sr.profile);
    }
    if (good.size() >= 2) {
        result.full = correlation_matrix(good, c.smr_orders);
        result.high = correlation_matrix(good, c.smr_subset);
    } else {
        result.notice = "correlation matrix omitted: need at least two series";
    }

    auto csv = open_out(c.out_dir, "smr_profiles.csv");
    csv << "label,n,gamma_emp,smr,tail_class\n";
    for (const SmrSeriesResult& sr : result.series) {
        if (!sr.ok) {
            std::cerr << "smr " << sr.profile.label << " failed: " << sr.error << '\n';
            continue;
        }
        for (std::size_t i = 0; i < sr.profile.orders.size(); ++i) {
            csv << sr.profile.label << ',' << sr.profile.orders[i] << ','
                << fmt(sr.profile.gamma_emp[i]) << ',' << fmt(sr.profile.smr[i]) << ',' << sr.tail
                << '\n';
        }
    }

    auto write_corr = [&](const std::string& name, const CorrelationResult& corr) {
        auto out = open_out(c.out_dir, name);
        out << "series";
        for (const MomentProfile& p : good) out << ',' << p.label;
        out << '\n';
        for (Eigen::Index i = 0; i < corr.matrix.rows(); ++i) {
            out << good[static_cast<std::size_t>(i)].label;
            for (Eigen::Index j = 0; j < corr.matrix.cols(); ++j) out << ',' << fmt(corr.matrix(i, j));
            out << '\n';
        }
    };
    nlohmann::json summary;
    if (result.full) {
        write_corr("smr_correlation_full.csv", *result.full);
        write_corr("smr_correlation_high.csv", *result.high);
        summary["full"] = {{"min_offdiag", result.full->min_offdiag},
                           {"max_offdiag", result.full->max_offdiag}};
        summary["high"] = {{"min_offdiag", result.high->min_offdiag},
                           {"max_offdiag", result.high->max_offdiag}};
        std::cout << "correlation off-diagonal range, full orders: [" << result.full->min_offdiag
                  << ", " << result.full->max_offdiag << "], high orders: ["
                  << result.high->min_offdiag << ", " << result.high->max_offdiag << "]\n";
    } else {
        summary["notice"] = result.notice;
        std::cout << result.notice << '\n';
    }
    write_json(c.out_dir, "smr_summary.json", summary);
    return result;
}

ComparisonReport run_benchmark(const RunConfig& c) {
    const TimeSeries series = resolve_input(c);
    BenchmarkSpecs specs;
    specs.qrc = c.reservoir;
    specs.esn = c.esn;
    specs.qiesn = c.qiesn;
    specs.mlp = c.mlp;
    specs.delta = c.delta;
    specs.lambda = c.lambda;
    specs.fraction = c.fraction;
    specs.models = c.models;

    PipelineOptions opts;
    opts.threads = c.threads;
    opts.sum_mse = c.sum_mse;
    const ComparisonReport report = benchmark_compare(series, specs, opts);
    write_json(c.out_dir, "benchmark.json", comparison_to_json(report));

    auto csv = open_out(c.out_dir, "benchmark.csv");
    csv << "model,ok,mse,nmse,rmse,mape,da,error\n";
    for (const ModelResult& m : report.results) {
        std::string msg = m.error;
        for (char& ch : msg) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        csv << m.model << ',' << (m.ok ? 1 : 0) << ',';
        if (m.ok) {
            csv << fmt(m.test.mse) << ',' << fmt(m.test.nmse) << ',' << fmt(m.test.rmse) << ','
                << fmt(m.test.mape_percent) << ',' << fmt(m.test.da);
        } else {
            csv << ",,,,";
        }
        csv << ',' << msg << '\n';
    }
    return report;
}

std::string run_synth(const RunConfig& c) {
    const TimeSeries ts = gen_synthetic(c.synthetic, c.synthetic_params, c.seed);
    std::filesystem::create_directories(c.out_dir);
    const std::string path = c.out_dir + "/" + ts.label + ".csv";
    write_csv(path, ts);
    return path;
}

}  // namespace qrc
