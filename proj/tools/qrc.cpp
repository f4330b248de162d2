#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <unistd.h>

#include "qrc/harness.hpp"

namespace {

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

/// Large simulations print their cost up front; interactive runs ask for
/// confirmation unless --yes. Returns false when the user declines.
bool cost_gate(const qrc::RunConfig& c, const std::vector<std::pair<int, long long>>& points,
               bool yes) {
    int max_n = 0;
    double total = 0.0;
    for (const auto& [n, samples] : points) {
        max_n = std::max(max_n, n);
        total += qrc::estimated_cost(n, samples, c.reservoir.n_steps);
    }
    if (max_n < 6) return true;
    std::fprintf(stderr,
                 "large simulation: N=%d, estimated cost %.3g (samples x steps x dim^3)\n",
                 max_n, total);
    if (yes || !isatty(fileno(stdin))) return true;
    std::fprintf(stderr, "proceed? [y/N] ");
    std::string line;
    if (!std::getline(std::cin, line)) return false;
    return !line.empty() && (line[0] == 'y' || line[0] == 'Y');
}

long long sample_count(const qrc::RunConfig& c) {
    return static_cast<long long>(qrc::resolve_input(c).size()) - 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-reservoir time-series forecasting toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string models_csv;
    std::uint64_t seed = 0;
    int threads = 0;
    bool yes = false;
    bool sum_mse = false;
    app.add_option("--config", config_path, "JSON config file");
    auto* seed_opt = app.add_option("--seed", seed, "global seed");
    auto* out_opt = app.add_option("--out", out_dir, "output directory");
    auto* threads_opt = app.add_option("--threads", threads, "worker threads");
    auto* models_opt = app.add_option("--models", models_csv, "comma list: qrc,esn,qiesn,mlp");
    app.add_flag("--yes", yes, "skip the large-run confirmation");
    auto* summse_opt = app.add_flag("--sum-mse", sum_mse, "report summed instead of mean MSE");

    // Input overrides shared by the run subcommands.
    std::string csv_in;
    std::string synthetic;
    std::string session;
    std::uint64_t length = 0;
    double period = 0.0;
    double sigma = -1.0;
    auto add_input_opts = [&](CLI::App* sub) {
        sub->add_option("--csv", csv_in, "input CSV (timestamp,volume)");
        sub->add_option("--synthetic", synthetic, "sine|noisy-sine|random-walk|gaussian-iid");
        sub->add_option("--length", length, "synthetic series length");
        sub->add_option("--period", period, "synthetic sine period");
        sub->add_option("--sigma", sigma, "noisy-sine noise scale");
        sub->add_option("--session", session, "timestamp filter: pre|in|after");
    };

    int n_qubits = 0;
    double delta0 = 0.0;
    double omega0 = 0.0;
    int delta = -1;
    double lambda = -1.0;
    double fraction = 0.0;
    bool include_predictions = false;
    auto add_model_opts = [&](CLI::App* sub) {
        sub->add_option("--n-qubits", n_qubits, "reservoir qubits (1-6)");
        sub->add_option("--delta0", delta0, "mean detuning");
        sub->add_option("--omega0", omega0, "mean Rabi frequency");
        sub->add_option("--delta", delta, "delay embedding depth");
        sub->add_option("--lambda", lambda, "ridge regularization");
        sub->add_option("--fraction", fraction, "training fraction");
    };

    CLI::App* cmd_forecast = app.add_subcommand("forecast", "one forecasting run");
    add_input_opts(cmd_forecast);
    add_model_opts(cmd_forecast);
    cmd_forecast->add_flag("--include-predictions", include_predictions,
                           "embed predictions in report.json");

    std::vector<int> sweep_n;
    std::vector<int> sweep_d0;
    std::vector<int> sweep_o0;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "grid over (N, delta0, omega0)");
    add_input_opts(cmd_sweep);
    add_model_opts(cmd_sweep);
    cmd_sweep->add_option("--n-list", sweep_n, "qubit counts")->delimiter(',');
    cmd_sweep->add_option("--delta0-list", sweep_d0, "detuning centers")->delimiter(',');
    cmd_sweep->add_option("--omega0-list", sweep_o0, "Rabi centers")->delimiter(',');

    std::vector<std::string> futures;
    bool reuse_scale = false;
    CLI::App* cmd_cross = app.add_subcommand("cross-day", "train once, score future series");
    add_input_opts(cmd_cross);
    add_model_opts(cmd_cross);
    cmd_cross->add_option("--future", futures, "future-day CSV (repeatable)");
    cmd_cross->add_flag("--reuse-scale", reuse_scale, "normalize futures by the training max");

    std::vector<std::string> smr_series;
    std::vector<int> orders;
    std::vector<int> subset;
    double slack = -1.0;
    CLI::App* cmd_smr = app.add_subcommand("smr", "standardized-moment tail analysis");
    add_input_opts(cmd_smr);
    cmd_smr->add_option("--series", smr_series, "input CSV (repeatable)");
    cmd_smr->add_option("--orders", orders, "moment orders")->delimiter(',');
    cmd_smr->add_option("--subset", subset, "high-order subset")->delimiter(',');
    cmd_smr->add_option("--slack", slack, "tail-class monotonicity slack");

    CLI::App* cmd_bench = app.add_subcommand("benchmark", "compare qrc/esn/qiesn/mlp");
    add_input_opts(cmd_bench);
    add_model_opts(cmd_bench);

    CLI::App* cmd_synth = app.add_subcommand("synth", "write a synthetic series CSV");
    add_input_opts(cmd_synth);

    // Let global flags (--seed, --out, ...) appear after the subcommand name.
    for (CLI::App* sub : {cmd_forecast, cmd_sweep, cmd_cross, cmd_smr, cmd_bench, cmd_synth}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    qrc::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = qrc::load_config(config_path);
        if (seed_opt->count()) {
            cfg.seed = seed;
            cfg.reservoir.seed = seed;
        }
        if (out_opt->count()) cfg.out_dir = out_dir;
        if (threads_opt->count()) cfg.threads = threads;
        if (models_opt->count()) cfg.models = split_list(models_csv);
        if (summse_opt->count()) cfg.sum_mse = sum_mse;
        if (!csv_in.empty()) cfg.input_csv = csv_in;
        if (!synthetic.empty()) cfg.synthetic = qrc::synthetic_from_name(synthetic);
        if (!session.empty()) {
            if (session != "pre" && session != "in" && session != "after") {
                throw std::invalid_argument("--session: expected one of pre, in, after");
            }
            cfg.session = session;
        }
        if (length > 0) cfg.synthetic_params.length = length;
        if (period > 0.0) cfg.synthetic_params.period = period;
        if (sigma >= 0.0) cfg.synthetic_params.sigma = sigma;
        if (n_qubits > 0) cfg.reservoir.n_qubits = n_qubits;
        if (delta0 > 0.0) cfg.reservoir.delta0 = delta0;
        if (omega0 > 0.0) cfg.reservoir.omega0 = omega0;
        if (delta >= 0) cfg.delta = delta;
        if (lambda >= 0.0) cfg.lambda = lambda;
        if (fraction > 0.0) cfg.fraction = fraction;
        if (include_predictions) cfg.include_predictions = true;
        if (!sweep_n.empty()) cfg.sweep_n_qubits = sweep_n;
        if (!sweep_d0.empty()) cfg.sweep_delta0 = sweep_d0;
        if (!sweep_o0.empty()) cfg.sweep_omega0 = sweep_o0;
        if (!futures.empty()) cfg.future_csvs = futures;
        if (reuse_scale) cfg.reuse_train_scale = true;
        if (!smr_series.empty()) cfg.smr_csvs = smr_series;
        if (!orders.empty()) cfg.smr_orders = orders;
        if (!subset.empty()) cfg.smr_subset = subset;
        if (slack >= 0.0) cfg.tail_slack = slack;
        cfg.reservoir.validate();
        // Re-validate through the schema so flag combinations obey the same
        // rules as config files.
        cfg = qrc::parse_config(qrc::config_to_json(cfg));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (cmd_forecast->parsed()) {
            const long long samples = sample_count(cfg);
            if (!cost_gate(cfg, {{cfg.reservoir.n_qubits, samples}}, yes)) return 1;
            const qrc::ForecastReport r = qrc::run_forecast(cfg);
            std::cout << "test da " << r.test.da << ", nmse " << r.test.nmse << ", mape "
                      << r.test.mape_percent << "% -> " << cfg.out_dir << "/report.json\n";
        } else if (cmd_sweep->parsed()) {
            const long long samples = sample_count(cfg);
            std::vector<std::pair<int, long long>> points;
            for (int n : cfg.sweep_n_qubits) {
                const auto grid = static_cast<long long>(cfg.sweep_delta0.size()) *
                                  static_cast<long long>(cfg.sweep_omega0.size());
                points.emplace_back(n, samples * grid);
            }
            if (!cost_gate(cfg, points, yes)) return 1;
            const qrc::SweepResult r = qrc::run_sweep(cfg);
            std::cout << r.rows.size() - static_cast<std::size_t>(r.n_failures) << " rows, "
                      << r.n_failures << " failures -> " << cfg.out_dir << "/sweep.csv\n";
        } else if (cmd_cross->parsed()) {
            const long long samples = sample_count(cfg);
            if (!cost_gate(cfg, {{cfg.reservoir.n_qubits, samples}}, yes)) return 1;
            const auto rows = qrc::run_cross_day(cfg);
            std::cout << rows.size() << " day(s) -> " << cfg.out_dir << "/cross_day.csv\n";
        } else if (cmd_smr->parsed()) {
            qrc::run_smr(cfg);
            std::cout << "profiles -> " << cfg.out_dir << "/smr_profiles.csv\n";
        } else if (cmd_bench->parsed()) {
            const long long samples = sample_count(cfg);
            if (!cost_gate(cfg, {{cfg.reservoir.n_qubits, samples}}, yes)) return 1;
            const qrc::ComparisonReport r = qrc::run_benchmark(cfg);
            for (const qrc::ModelResult& m : r.results) {
                if (m.ok) {
                    std::cout << m.model << ": da " << m.test.da << ", nmse " << m.test.nmse
                              << ", mape " << m.test.mape_percent << "%\n";
                } else {
                    std::cout << m.model << ": failed (" << m.error << ")\n";
                }
            }
        } else if (cmd_synth->parsed()) {
            std::cout << qrc::run_synth(cfg) << '\n';
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
