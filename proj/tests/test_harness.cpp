#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrc/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Fresh scratch directory per case; removed up front so reruns are clean.
std::string scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qrc_harness_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

/// Small fast configuration: two qubits, short evolution, short sine.
qrc::RunConfig fast_config(const std::string& out_dir) {
    return qrc::parse_config(json{
        {"seed", 5},
        {"input", {{"synthetic", "sine"}, {"length", 120}, {"period", 16.0}}},
        {"reservoir", {{"n_qubits", 2}, {"n_steps", 600}}},
        {"readout", {{"delta", 4}}},
        {"output", {{"dir", out_dir}}},
    });
}

}  // namespace

TEST_CASE("estimated cost grows with qubits, samples, and steps") {
    const double base = qrc::estimated_cost(2, 100, 300);
    CHECK(base > 0.0);
    CHECK(qrc::estimated_cost(3, 100, 300) == doctest::Approx(8.0 * base));
    CHECK(qrc::estimated_cost(2, 200, 300) == doctest::Approx(2.0 * base));
    CHECK(qrc::estimated_cost(2, 100, 600) == doctest::Approx(2.0 * base));
}

TEST_CASE("input resolution prefers the csv and falls back to synthetic") {
    const std::string dir = scratch("resolve_input");
    const std::string csv = dir + "/day.csv";
    {
        std::ofstream out(csv);
        out << "timestamp,volume\n";
        out << "2024-03-04T09:00:00,5\n";   // pre-market
        out << "2024-03-04T10:00:00,7\n";   // in-market
        out << "2024-03-04T15:59:00,9\n";   // in-market
        out << "2024-03-04T17:00:00,4\n";   // after-market
    }

    qrc::RunConfig c;
    c.input_csv = csv;
    auto all = qrc::resolve_input(c);
    CHECK(all.size() == 4);
    CHECK(all.label == "day");

    c.session = "in";
    auto in_market = qrc::resolve_input(c);
    REQUIRE(in_market.size() == 2);
    CHECK(in_market.values[0] == doctest::Approx(7.0));
    CHECK(in_market.values[1] == doctest::Approx(9.0));

    qrc::RunConfig synth;
    synth.seed = 3;
    synth.synthetic = qrc::Synthetic::Sine;
    synth.synthetic_params.length = 50;
    auto generated = qrc::resolve_input(synth);
    CHECK(generated.size() == 50);
    CHECK(generated.values == qrc::gen_synthetic(qrc::Synthetic::Sine,
                                                 synth.synthetic_params, 3).values);
}

TEST_CASE("synth writes a csv that loads back identically") {
    const std::string dir = scratch("synth");
    qrc::RunConfig c;
    c.seed = 21;
    c.synthetic = qrc::Synthetic::NoisySine;
    c.synthetic_params.length = 80;
    c.out_dir = dir;

    const std::string path = qrc::run_synth(c);
    CHECK(path == dir + "/noisy-sine.csv");
    auto loaded = qrc::load_csv(path);
    auto expected = qrc::gen_synthetic(qrc::Synthetic::NoisySine, c.synthetic_params, 21);
    REQUIRE(loaded.size() == expected.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded.values[i] == expected.values[i]);
    }
}

TEST_CASE("forecast writes a report and an aligned predictions table") {
    const std::string dir = scratch("forecast");
    auto c = fast_config(dir);
    c.include_predictions = true;

    const auto report = qrc::run_forecast(c);
    CHECK(report.n_qubits == 2);
    CHECK(report.test.n_points == 48);   // 40% of 120
    CHECK(report.train.n_points == 67);  // 72 train points minus delta+1
    CHECK(report.test.da > 0.5);

    // report.json reproduces the in-memory report.
    const json j = json::parse(slurp(dir + "/report.json"));
    const auto back = qrc::report_from_json(j);
    CHECK(back.test.mse == report.test.mse);
    CHECK(back.test.da == report.test.da);
    CHECK(back.seed == report.seed);
    CHECK(back.config_snapshot == report.config_snapshot);
    REQUIRE(back.test_predictions.size() == report.test_predictions.size());

    // predictions.csv: header, then train rows starting at index delta+1,
    // then test rows; indices advance by one per row.
    const auto rows = lines_of(slurp(dir + "/predictions.csv"));
    REQUIRE(rows.size() == 1 + 67 + 48);
    CHECK(rows[0] == "index,actual,predicted,partition");
    CHECK(rows[1].substr(0, 2) == "5,");  // delta + 1
    CHECK(rows[1].substr(rows[1].size() - 6) == ",train");
    CHECK(rows[67].substr(rows[67].size() - 6) == ",train");
    CHECK(rows[68].substr(0, 3) == "72,");  // first test target
    CHECK(rows[68].substr(rows[68].size() - 5) == ",test");
    CHECK(rows.back().substr(0, 4) == "119,");
}

TEST_CASE("the config snapshot re-executes to identical metrics") {
    const std::string dir = scratch("snapshot_a");
    auto c = fast_config(dir);
    const auto first = qrc::run_forecast(c);

    auto snapshot = first.config_snapshot;
    snapshot["output"]["dir"] = scratch("snapshot_b");
    const auto second = qrc::run_forecast(qrc::parse_config(snapshot));
    CHECK(second.test.mse == first.test.mse);
    CHECK(second.test.nmse == first.test.nmse);
    CHECK(second.test.da == first.test.da);
    CHECK(second.train.mse == first.train.mse);
}

TEST_CASE("sweep covers the grid in order and reports the best points") {
    const std::string dir = scratch("sweep");
    auto c = fast_config(dir);
    c.sweep_n_qubits = {1, 2};
    c.sweep_delta0 = {8};
    c.sweep_omega0 = {6};

    const auto result = qrc::run_sweep(c);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].n_qubits == 1);
    CHECK(result.rows[1].n_qubits == 2);
    CHECK(result.rows[0].ok);
    CHECK(result.rows[1].ok);
    CHECK(result.n_failures == 0);
    REQUIRE(result.best_da.has_value());
    REQUIRE(result.best_mse.has_value());
    CHECK(result.best_mse->test.mse <=
          std::min(result.rows[0].test.mse, result.rows[1].test.mse));

    const auto csv = lines_of(slurp(dir + "/sweep.csv"));
    REQUIRE(csv.size() == 3);
    CHECK(csv[0] == "n_qubits,delta0,omega0,mse,nmse,rmse,mape,da");
    CHECK(csv[1].substr(0, 6) == "1,8,6,");
    CHECK(csv[2].substr(0, 6) == "2,8,6,");

    // No failures: the failure table is just its header.
    const auto failures = lines_of(slurp(dir + "/sweep_failures.csv"));
    REQUIRE(failures.size() == 1);
    CHECK(failures[0] == "n_qubits,delta0,omega0,error");

    const json best = json::parse(slurp(dir + "/sweep_best.json"));
    CHECK(best.at("failures").get<int>() == 0);
    CHECK(best.at("best_da").is_object());
    CHECK(best.at("best_mse").at("n_qubits").is_number());
}

TEST_CASE("sweep results do not depend on the thread count") {
    auto c1 = fast_config(scratch("sweep_t1"));
    c1.sweep_n_qubits = {1, 2};
    c1.sweep_delta0 = {4, 8};
    c1.sweep_omega0 = {6};
    c1.threads = 1;
    auto c4 = c1;
    c4.out_dir = scratch("sweep_t4");
    c4.threads = 4;

    qrc::run_sweep(c1);
    qrc::run_sweep(c4);
    CHECK(slurp(c1.out_dir + "/sweep.csv") == slurp(c4.out_dir + "/sweep.csv"));
    CHECK(slurp(c1.out_dir + "/sweep_best.json") == slurp(c4.out_dir + "/sweep_best.json"));
}

TEST_CASE("cross-day with no futures yields an empty table") {
    const std::string dir = scratch("cross_empty");
    auto c = fast_config(dir);
    const auto rows = qrc::run_cross_day(c);
    CHECK(rows.empty());
    const auto csv = lines_of(slurp(dir + "/cross_day.csv"));
    REQUIRE(csv.size() == 1);
    CHECK(csv[0] == "label,date,da,n_points,ties");
}

TEST_CASE("replaying the training partition reproduces its accuracy") {
    const std::string dir = scratch("cross_replay");
    auto c = fast_config(dir);

    // The training partition of the configured input, saved as a future day.
    auto series = qrc::gen_synthetic(c.synthetic, c.synthetic_params, c.seed);
    qrc::TimeSeries head;
    head.values.assign(series.values.begin(), series.values.begin() + 72);
    const std::string future_csv = dir + "/train_partition.csv";
    qrc::write_csv(future_csv, head);

    const auto report = qrc::run_forecast(c);

    c.future_csvs = {future_csv};
    c.reuse_train_scale = true;  // score on the training run's scale
    const auto rows = qrc::run_cross_day(c);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].ok);
    CHECK(rows[0].date == "train_partition");
    CHECK(rows[0].n_points == 67);
    CHECK(rows[0].da == doctest::Approx(report.train.da).epsilon(1e-12));
    CHECK(rows[0].ties == report.train.n_ties);

    const auto csv = lines_of(slurp(dir + "/cross_day.csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[1].substr(0, 21) == "sine,train_partition,");
}

TEST_CASE("cross-day records per-file errors without aborting the batch") {
    const std::string dir = scratch("cross_errors");
    auto c = fast_config(dir);

    auto series = qrc::gen_synthetic(c.synthetic, c.synthetic_params, c.seed);
    qrc::TimeSeries ok_day;
    ok_day.values.assign(series.values.begin(), series.values.begin() + 60);
    const std::string good_csv = dir + "/good.csv";
    qrc::write_csv(good_csv, ok_day);

    c.future_csvs = {dir + "/missing.csv", good_csv};
    const auto rows = qrc::run_cross_day(c);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].ok);
    CHECK(rows[0].date == "missing");
    CHECK_FALSE(rows[0].error.empty());
    CHECK(rows[1].ok);

    // Only the successful row lands in the CSV.
    const auto csv = lines_of(slurp(dir + "/cross_day.csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[1].substr(0, 10) == "sine,good,");
}

TEST_CASE("moment study on one series notes the missing correlation") {
    const std::string dir = scratch("smr_one");
    qrc::RunConfig c;
    c.seed = 17;
    c.synthetic = qrc::Synthetic::GaussianIID;
    c.synthetic_params.length = 3000;
    c.out_dir = dir;

    const auto result = qrc::run_smr(c);
    REQUIRE(result.series.size() == 1);
    CHECK(result.series[0].ok);
    CHECK_FALSE(result.series[0].tail.empty());
    CHECK_FALSE(result.full.has_value());
    CHECK(result.notice == "correlation matrix omitted: need at least two series");

    const json summary = json::parse(slurp(dir + "/smr_summary.json"));
    CHECK(summary.at("notice").get<std::string>() == result.notice);
    CHECK_FALSE(fs::exists(dir + "/smr_correlation_full.csv"));

    // Profile table: one row per requested order.
    const auto csv = lines_of(slurp(dir + "/smr_profiles.csv"));
    REQUIRE(csv.size() == 1 + c.smr_orders.size());
    CHECK(csv[0] == "label,n,gamma_emp,smr,tail_class");
    CHECK(csv[1].substr(0, 15) == "gaussian-iid,4,");
}

TEST_CASE("moment study on two series writes both correlation matrices") {
    const std::string dir = scratch("smr_two");
    qrc::SyntheticParams p;
    p.length = 4000;
    const auto a = qrc::gen_synthetic(qrc::Synthetic::GaussianIID, p, 100);
    const auto b = qrc::gen_synthetic(qrc::Synthetic::GaussianIID, p, 200);
    const std::string a_csv = dir + "/a.csv";
    const std::string b_csv = dir + "/b.csv";
    qrc::write_csv(a_csv, a);
    qrc::write_csv(b_csv, b);

    qrc::RunConfig c;
    c.smr_csvs = {a_csv, b_csv};
    c.out_dir = dir;
    const auto result = qrc::run_smr(c);
    REQUIRE(result.series.size() == 2);
    CHECK(result.series[0].ok);
    CHECK(result.series[1].ok);
    REQUIRE(result.full.has_value());
    REQUIRE(result.high.has_value());
    CHECK(result.notice.empty());
    CHECK(result.full->matrix.rows() == 2);
    CHECK(result.full->matrix(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.full->min_offdiag <= result.full->max_offdiag);

    const auto full = lines_of(slurp(dir + "/smr_correlation_full.csv"));
    REQUIRE(full.size() == 3);
    CHECK(full[0] == "series,a,b");
    CHECK(full[1].substr(0, 2) == "a,");
    CHECK(lines_of(slurp(dir + "/smr_correlation_high.csv")).size() == 3);

    const json summary = json::parse(slurp(dir + "/smr_summary.json"));
    CHECK(summary.contains("full"));
    CHECK(summary.contains("high"));
    CHECK(summary.at("full").at("min_offdiag").is_number());
}

TEST_CASE("benchmark harness honours the model list and writes both outputs") {
    const std::string dir = scratch("bench");
    auto c = fast_config(dir);
    c.models = {"esn"};
    c.esn.n_reservoir = 60;
    c.esn.washout = 10;

    const auto report = qrc::run_benchmark(c);
    REQUIRE(report.results.size() == 1);
    CHECK(report.results[0].model == "esn");
    CHECK(report.results[0].ok);

    const auto csv = lines_of(slurp(dir + "/benchmark.csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[0] == "model,ok,mse,nmse,rmse,mape,da,error");
    CHECK(csv[1].substr(0, 6) == "esn,1,");

    const json j = json::parse(slurp(dir + "/benchmark.json"));
    const auto back = qrc::comparison_from_json(j);
    REQUIRE(back.results.size() == 1);
    CHECK(back.results[0].test.mse == report.results[0].test.mse);
}
