// Standalone acceptance suite for the forecasting toolkit. Each criterion
// prints exactly one PASS/FAIL line; the process exits nonzero if any
// criterion fails. Every randomized check runs from a committed seed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qrc/benchmark.hpp"
#include "qrc/config.hpp"
#include "qrc/data.hpp"
#include "qrc/esn.hpp"
#include "qrc/harness.hpp"
#include "qrc/metrics.hpp"
#include "qrc/mlp.hpp"
#include "qrc/moments.hpp"
#include "qrc/random.hpp"
#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kPi = 3.14159265358979323846;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

/// Outcome of one criterion: failure reasons plus a short stats string that
/// is printed either way.
struct Check {
    bool ok = true;
    std::string why;
    std::string stats;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (!why.empty()) why += "; ";
        why += what;
    }
};

std::string scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qrc_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) return "<unreadable: " + path + ">";
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// 1. Evolved states stay physical across random dissipative reservoirs.
// ---------------------------------------------------------------------------
Check physical_state_invariants() {
    Check c;
    const auto t0 = Clock::now();
    qrc::Rng rng(20260816);
    const double gammas[] = {0.0, 1e-8, 1e-2};
    double worst_trace = 0.0;
    double worst_herm = 0.0;
    double lowest_eig = 0.0;

    // Fixed-step RK4 has fifth-order local phase error, so the -1e-9
    // positivity floor bounds the Hamiltonian scale the suite may draw at
    // 3000 steps; this range keeps roughly an order of magnitude in hand.
    for (int i = 0; i < 50; ++i) {
        qrc::ReservoirSpec spec;
        spec.n_qubits = 1 + i % 4;
        spec.delta0 = rng.uniform(0.25, 2.5);
        spec.omega0 = rng.uniform(0.25, 2.5);
        spec.v0 = rng.uniform(0.25, 1.0);
        spec.spread = rng.uniform(0.0, 0.2);
        spec.gamma = gammas[i % 3];
        spec.collapse = qrc::Collapse::Lowering;
        spec.encoding = i % 2 == 0 ? qrc::Encoding::Detuning : qrc::Encoding::Both;
        spec.n_steps = 3000;
        spec.seed = rng.next_u64();

        qrc::Rng draw(spec.seed);
        const qrc::QubitParams params = qrc::sample_qubit_params(spec, draw);
        const qrc::InitialState init = qrc::sample_initial_state(spec, draw);
        const qrc::DensityMatrix rho0 = qrc::prepare_initial_state(spec, init);
        const Eigen::MatrixXcd h = qrc::build_hamiltonian(params, rng.uniform01(), spec);
        const qrc::DensityMatrix rho = qrc::evolve_rk4(rho0, h, spec);

        worst_trace = std::max(worst_trace, qrc::trace_error(rho));
        worst_herm = std::max(worst_herm, qrc::hermiticity_error(rho));
        lowest_eig = std::min(lowest_eig, qrc::min_eigenvalue(rho));
    }

    const double elapsed = seconds_since(t0);
    c.require(worst_trace < 1e-8, "trace error " + num(worst_trace));
    c.require(worst_herm < 1e-10, "hermiticity error " + num(worst_herm));
    c.require(lowest_eig >= -1e-9, "min eigenvalue " + num(lowest_eig));
    c.require(elapsed < 60.0, "took " + num(elapsed) + "s");
    c.stats = "50 specs, worst trace " + num(worst_trace) + ", herm " + num(worst_herm) +
              ", min eig " + num(lowest_eig) + ", " + num(elapsed) + "s";
    return c;
}

// ---------------------------------------------------------------------------
// 2. A resonantly driven qubit follows the closed-form Rabi oscillation.
// ---------------------------------------------------------------------------
Check rabi_oscillation_oracle() {
    Check c;
    const double omegas[] = {0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    double worst = 0.0;
    for (double omega : omegas) {
        qrc::ReservoirSpec spec;
        spec.n_qubits = 1;
        spec.delta0 = 0.0;
        spec.omega0 = omega;
        spec.spread = 0.0;
        spec.gamma = 0.0;
        spec.collapse = qrc::Collapse::Lowering;
        spec.observable = qrc::Observable::ExcitedPopulation;
        spec.n_steps = 3000;

        qrc::Rng draw(1);
        const qrc::QubitParams params = qrc::sample_qubit_params(spec, draw);
        const Eigen::MatrixXcd h = qrc::build_hamiltonian(params, 0.0, spec);
        const qrc::DensityMatrix rho =
            qrc::evolve_rk4(qrc::prepare_initial_state(spec), h, spec);
        const double population = qrc::measure_readout(rho, spec)[0];
        const double expected = std::pow(std::sin(0.5 * omega * spec.t_evolve), 2);
        worst = std::max(worst, std::abs(population - expected));
    }
    c.require(worst < 1e-6, "worst deviation " + num(worst));
    c.stats = "10 drive strengths, worst deviation " + num(worst);
    return c;
}

// ---------------------------------------------------------------------------
// 3. The exact propagator and the integrator agree without dissipation.
// ---------------------------------------------------------------------------
Check exact_vs_integrated() {
    Check c;
    qrc::Rng rng(31415);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        qrc::ReservoirSpec spec;
        spec.n_qubits = 1 + i % 4;
        spec.delta0 = rng.uniform(1.0, 5.0);
        spec.omega0 = rng.uniform(1.0, 5.0);
        spec.v0 = rng.uniform(0.5, 1.5);
        spec.spread = rng.uniform(0.0, 0.1);
        spec.gamma = 0.0;
        spec.encoding =
            i % 3 == 0 ? qrc::Encoding::Detuning
                       : (i % 3 == 1 ? qrc::Encoding::Rabi : qrc::Encoding::Both);
        spec.n_steps = 3000;
        spec.seed = rng.next_u64();

        qrc::Rng draw(spec.seed);
        const qrc::QubitParams params = qrc::sample_qubit_params(spec, draw);
        const qrc::InitialState init = qrc::sample_initial_state(spec, draw);
        const qrc::DensityMatrix rho0 = qrc::prepare_initial_state(spec, init);
        const Eigen::MatrixXcd h = qrc::build_hamiltonian(params, rng.uniform01(), spec);

        const qrc::DensityMatrix exact = qrc::evolve_eigen(rho0, h, spec);
        const qrc::DensityMatrix stepped = qrc::evolve_rk4(rho0, h, spec);
        worst = std::max(worst, (exact - stepped).cwiseAbs().maxCoeff());
    }
    c.require(worst < 1e-6, "worst elementwise gap " + num(worst));
    c.stats = "20 specs, worst elementwise gap " + num(worst);
    return c;
}

// ---------------------------------------------------------------------------
// 4. Ridge solutions match an independent normal-equation evaluation.
// ---------------------------------------------------------------------------
Check ridge_regression_oracle() {
    Check c;
    qrc::Rng rng(2718);

    auto random_system = [&](Eigen::Index f, Eigen::Index k) {
        qrc::FeatureMatrix w;
        w.entries.resize(f, k);
        for (Eigen::Index i = 0; i < f; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) w.entries(i, j) = rng.normal();
        }
        std::vector<double> y(static_cast<std::size_t>(k));
        for (double& v : y) v = rng.normal();
        return std::make_pair(w, y);
    };

    double worst = 0.0;
    for (const auto& [f, k] : {std::make_pair<Eigen::Index, Eigen::Index>(5, 50),
                               std::make_pair<Eigen::Index, Eigen::Index>(30, 200)}) {
        for (double lambda : {1e-4, 1e-2}) {
            const auto [w, y] = random_system(f, k);
            const qrc::ReadoutModel model = qrc::ridge_fit(w, y, lambda);

            const Eigen::Map<const Eigen::VectorXd> yv(y.data(),
                                                       static_cast<Eigen::Index>(y.size()));
            const Eigen::MatrixXd gram =
                w.entries * w.entries.transpose() +
                lambda * Eigen::MatrixXd::Identity(f, f);
            const Eigen::VectorXd oracle = gram.inverse() * (w.entries * yv);
            worst = std::max(worst, (model.coefficients - oracle).cwiseAbs().maxCoeff());
        }
    }
    c.require(worst < 1e-10, "worst coefficient gap " + num(worst));

    // Heavier regularization must not grow the coefficient norm.
    int violations = 0;
    for (int i = 0; i < 20; ++i) {
        const auto [w, y] = random_system(8, 60);
        double previous = -1.0;
        for (double lambda : {1e-6, 1e-4, 1e-2, 1.0, 100.0}) {
            const double norm = qrc::ridge_fit(w, y, lambda).coefficients.norm();
            if (previous >= 0.0 && norm > previous * (1.0 + 1e-12)) ++violations;
            previous = norm;
        }
    }
    c.require(violations == 0, std::to_string(violations) + " shrinkage violations");
    c.stats = "worst coefficient gap " + num(worst) + ", shrinkage monotone on 20 systems";
    return c;
}

// ---------------------------------------------------------------------------
// 5. The 60/40 chronological split reproduces twenty published count pairs.
// ---------------------------------------------------------------------------
Check split_count_reproduction() {
    Check c;
    const int table[][3] = {
        // {total, train, test}
        {998, 598, 400},  {1257, 754, 503}, {1257, 754, 503}, {1169, 701, 468},
        {1073, 643, 430}, {1255, 753, 502}, {1257, 754, 503}, {1012, 607, 405},
        {1106, 663, 443}, {1257, 754, 503}, {1087, 652, 435}, {473, 283, 190},
        {259, 155, 104},  {1257, 754, 503}, {1257, 754, 503}, {1257, 754, 503},
        {1257, 754, 503}, {1257, 754, 503}, {1257, 754, 503}, {1257, 754, 503},
    };
    int matched = 0;
    for (const auto& row : table) {
        qrc::TimeSeries ts;
        ts.values.resize(static_cast<std::size_t>(row[0]));
        for (int i = 0; i < row[0]; ++i) ts.values[static_cast<std::size_t>(i)] = i + 1.0;
        const qrc::DatasetSplit split = qrc::split_train_test(ts, 0.6);
        if (static_cast<int>(split.train.size()) == row[1] &&
            static_cast<int>(split.test.size()) == row[2]) {
            ++matched;
        } else {
            c.require(false, "K=" + std::to_string(row[0]) + " gave " +
                                 std::to_string(split.train.size()) + "/" +
                                 std::to_string(split.test.size()) + ", expected " +
                                 std::to_string(row[1]) + "/" + std::to_string(row[2]));
        }
    }
    c.stats = std::to_string(matched) + "/20 split pairs reproduced";
    return c;
}

// ---------------------------------------------------------------------------
// 6. A three-qubit reservoir forecasts a sine accurately within budget.
// ---------------------------------------------------------------------------
Check sine_forecasting(qrc::ForecastReport& out) {
    Check c;
    const auto t0 = Clock::now();

    qrc::SyntheticParams p;
    p.length = 400;
    p.period = 16.0;
    const qrc::TimeSeries series = qrc::gen_synthetic(qrc::Synthetic::Sine, p, 1);

    qrc::ReservoirSpec spec;
    spec.n_qubits = 3;
    spec.delta0 = 8.0;
    spec.omega0 = 6.0;
    spec.seed = 1;

    qrc::PipelineOptions opts;
    opts.threads = 4;
    out = qrc::forecast_pipeline(series, spec, 6, 1e-4, 0.6, opts);

    const double elapsed = seconds_since(t0);
    c.require(out.test.da >= 0.95, "test direction accuracy " + num(out.test.da));
    c.require(out.test.nmse <= 0.05, "test nmse " + num(out.test.nmse));
    c.require(elapsed < 300.0, "took " + num(elapsed) + "s");
    c.stats = "test da " + num(out.test.da) + ", nmse " + num(out.test.nmse) + ", " +
              num(elapsed) + "s";
    return c;
}

// ---------------------------------------------------------------------------
// 7. A readout trained on one day transfers to phase-shifted days.
// ---------------------------------------------------------------------------
Check cross_day_generalization() {
    Check c;
    const std::string dir = scratch_dir("cross_day");

    // Five future days: the same sine sampled at shifted phases.
    std::vector<std::string> futures;
    for (int j = 1; j <= 5; ++j) {
        const double phase = 2.0 * kPi * j / 7.0;
        qrc::TimeSeries day;
        day.values.resize(400);
        for (std::size_t k = 0; k < day.values.size(); ++k) {
            day.values[k] =
                0.5 + 0.45 * std::sin(2.0 * kPi * static_cast<double>(k) / 16.0 + phase);
        }
        const std::string path = dir + "/day" + std::to_string(j) + ".csv";
        qrc::write_csv(path, day);
        futures.push_back(path);
    }

    qrc::RunConfig cfg = qrc::parse_config(nlohmann::json{
        {"seed", 1},
        {"threads", 4},
        {"input", {{"synthetic", "sine"}, {"length", 400}, {"period", 16.0}}},
        {"reservoir", {{"n_qubits", 3}, {"delta0", 8.0}, {"omega0", 6.0}}},
        {"readout", {{"delta", 6}, {"lambda", 1e-4}}},
        {"cross_day", {{"futures", futures}}},
        {"output", {{"dir", dir}}},
    });

    const auto rows = qrc::run_cross_day(cfg);
    c.require(rows.size() == 5, "expected 5 result rows, got " + std::to_string(rows.size()));
    double lowest = 1.0;
    for (const auto& row : rows) {
        c.require(row.ok, row.date + " failed: " + row.error);
        if (!row.ok) continue;
        lowest = std::min(lowest, row.da);
        c.require(row.da >= 0.9, row.date + " direction accuracy " + num(row.da));
    }
    c.stats = "5 shifted days, lowest da " + num(lowest);
    return c;
}

// ---------------------------------------------------------------------------
// 8. Moment-ratio estimates hit their distributional oracles.
// ---------------------------------------------------------------------------
Check moment_ratio_oracles() {
    Check c;
    const std::size_t k = 100000;

    std::vector<double> gauss(k);
    qrc::Rng g(42);
    for (double& v : gauss) v = g.normal();
    const double r4_gauss = qrc::smr_profile(gauss, {4}).smr[0];
    c.require(r4_gauss >= 0.95 && r4_gauss <= 1.05,
              "gaussian fourth-order ratio " + num(r4_gauss));

    // Student-t with five degrees of freedom: heavier than gaussian tails.
    std::vector<double> heavy(k);
    qrc::Rng t(7);
    for (double& v : heavy) {
        double chi2 = 0.0;
        for (int d = 0; d < 5; ++d) chi2 += std::pow(t.normal(), 2);
        v = t.normal() / std::sqrt(chi2 / 5.0);
    }
    const double r4_heavy = qrc::smr_profile(heavy, {4}).smr[0];
    c.require(r4_heavy < 1.0, "heavy-tail fourth-order ratio " + num(r4_heavy));

    // Two-point distribution at +/-1: fourth standardized moment exactly 1.
    std::vector<double> two_point(1000);
    for (std::size_t i = 0; i < two_point.size(); ++i) two_point[i] = i % 2 == 0 ? -1.0 : 1.0;
    const double r4_two = qrc::smr_profile(two_point, {4}).smr[0];
    c.require(std::abs(r4_two - 3.0) < 1e-10, "two-point ratio " + num(r4_two));

    const double r = qrc::pearson({1.0, 2.0, 3.0}, {1.0, 2.0, 4.0});
    const double expected = 9.0 / (2.0 * std::sqrt(21.0));
    c.require(std::abs(r - expected) < 1e-12, "pearson hand example " + num(r));

    c.stats = "gaussian R4 " + num(r4_gauss) + ", heavy R4 " + num(r4_heavy) +
              ", two-point R4 " + num(r4_two);
    return c;
}

// ---------------------------------------------------------------------------
// 9. Classical baselines behave: radius, fading memory, gradients, accuracy.
// ---------------------------------------------------------------------------
Check baseline_suite() {
    Check c;

    // Spectral radius lands on the requested value for ten draws.
    double worst_radius = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        qrc::EsnSpec spec;
        spec.seed = seed;
        const double radius = qrc::spectral_radius(qrc::esn_init(spec).w);
        worst_radius = std::max(worst_radius, std::abs(radius - 0.95));
    }
    c.require(worst_radius < 1e-6, "radius deviation " + num(worst_radius));

    // Two initial conditions converge under a shared drive.
    qrc::EsnSpec esn;
    esn.n_reservoir = 120;
    esn.seed = 5;
    qrc::SyntheticParams p;
    p.length = 500;
    const auto drive = qrc::gen_synthetic(qrc::Synthetic::NoisySine, p, 13);
    auto a = qrc::esn_init(esn);
    auto b = qrc::esn_init(esn);
    qrc::Rng perturb(44);
    for (Eigen::Index i = 0; i < b.x.size(); ++i) b.x(i) = perturb.uniform(-1.0, 1.0);
    double gap = 1.0;
    for (std::size_t s = 0; s < 200; ++s) {
        qrc::esn_step(a, drive.values[s]);
        qrc::esn_step(b, drive.values[s]);
    }
    gap = (a.x - b.x).cwiseAbs().maxCoeff();
    c.require(gap < 1e-6, "state gap after 200 steps " + num(gap));

    // Analytic network gradients match central finite differences.
    qrc::MlpSpec mlp;
    mlp.layer_sizes = {5, 7, 4, 1};
    mlp.seed = 31;
    auto model = qrc::mlp_init(mlp);
    qrc::Rng data(18);
    Eigen::MatrixXd x(5, 12);
    Eigen::VectorXd y(12);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = data.normal();
    }
    for (Eigen::Index j = 0; j < y.size(); ++j) y(j) = data.normal();
    qrc::MlpGradients grads;
    qrc::mlp_loss_and_grad(model, x, y, grads);
    const double eps = 1e-5;
    double worst_grad = 0.0;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        for (Eigen::Index i = 0; i < model.weights[l].rows(); ++i) {
            for (Eigen::Index j = 0; j < model.weights[l].cols(); ++j) {
                auto probe = model;
                qrc::MlpGradients scratch;
                probe.weights[l](i, j) += eps;
                const double up = qrc::mlp_loss_and_grad(probe, x, y, scratch);
                probe.weights[l](i, j) -= 2.0 * eps;
                const double down = qrc::mlp_loss_and_grad(probe, x, y, scratch);
                const double numeric = (up - down) / (2.0 * eps);
                const double analytic = grads.weights[l](i, j);
                const double rel = std::abs(numeric - analytic) /
                                   std::max({std::abs(numeric), std::abs(analytic), 1e-8});
                worst_grad = std::max(worst_grad, rel);
            }
        }
    }
    c.require(worst_grad < 1e-4, "gradient relative error " + num(worst_grad));

    // All four models clear the accuracy bar on the committed-seed sine run.
    qrc::SyntheticParams sp;
    sp.length = 400;
    sp.period = 16.0;
    const auto series = qrc::gen_synthetic(qrc::Synthetic::Sine, sp, 1);
    qrc::BenchmarkSpecs specs;
    specs.qrc.n_qubits = 2;
    specs.qrc.delta0 = 8.0;
    specs.qrc.omega0 = 6.0;
    specs.qrc.seed = 9;
    qrc::PipelineOptions opts;
    opts.threads = 4;
    const auto report = qrc::benchmark_compare(series, specs, opts);
    double lowest_da = 1.0;
    for (const auto& row : report.results) {
        c.require(row.ok, row.model + " failed: " + row.error);
        if (!row.ok) continue;
        lowest_da = std::min(lowest_da, row.test.da);
        c.require(row.test.da >= 0.9, row.model + " direction accuracy " + num(row.test.da));
    }
    c.require(report.results.size() == 4,
              "expected 4 benchmark rows, got " + std::to_string(report.results.size()));

    c.stats = "radius dev " + num(worst_radius) + ", memory gap " + num(gap) +
              ", grad err " + num(worst_grad) + ", lowest benchmark da " + num(lowest_da);
    return c;
}

// ---------------------------------------------------------------------------
// 10. Results are reproducible: thread-count invariance and snapshot replay.
// ---------------------------------------------------------------------------
Check determinism_suite() {
    Check c;

    auto sweep_config = [](const std::string& dir, int threads) {
        return qrc::parse_config(nlohmann::json{
            {"seed", 11},
            {"threads", threads},
            {"input", {{"synthetic", "sine"}, {"length", 160}, {"period", 16.0}}},
            {"readout", {{"delta", 6}, {"lambda", 1e-4}}},
            {"sweep", {{"n_qubits", {1, 2, 3}}, {"delta0", {4, 8}}, {"omega0", {3, 6}}}},
            {"output", {{"dir", dir}}},
        });
    };
    const std::string dir1 = scratch_dir("sweep_threads1");
    const std::string dir4 = scratch_dir("sweep_threads4");
    const auto r1 = qrc::run_sweep(sweep_config(dir1, 1));
    const auto r4 = qrc::run_sweep(sweep_config(dir4, 4));
    c.require(r1.rows.size() == 12 && r4.rows.size() == 12, "expected 12 grid points");
    c.require(r1.n_failures == 0 && r4.n_failures == 0, "sweep points failed");

    auto sorted_lines = [](const std::string& text) {
        std::vector<std::string> lines;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        std::sort(lines.begin(), lines.end());
        return lines;
    };
    const std::string csv1 = slurp(dir1 + "/sweep.csv");
    const std::string csv4 = slurp(dir4 + "/sweep.csv");
    c.require(csv1 == csv4, "sweep tables differ between 1 and 4 threads");
    c.require(sorted_lines(csv1) == sorted_lines(csv4), "sorted sweep tables differ");

    // A run's resolved config snapshot replays to bit-identical metrics.
    qrc::RunConfig cfg = qrc::parse_config(nlohmann::json{
        {"seed", 4},
        {"threads", 4},
        {"input", {{"synthetic", "sine"}, {"length", 160}, {"period", 16.0}}},
        {"reservoir", {{"n_qubits", 2}}},
        {"readout", {{"delta", 6}}},
        {"output", {{"dir", scratch_dir("replay_a")}}},
    });
    const auto first = qrc::run_forecast(cfg);
    nlohmann::json snapshot = first.config_snapshot;
    snapshot["output"]["dir"] = scratch_dir("replay_b");
    const auto second = qrc::run_forecast(qrc::parse_config(snapshot));
    const bool identical = second.test.mse == first.test.mse &&
                           second.test.nmse == first.test.nmse &&
                           second.test.da == first.test.da &&
                           second.train.mse == first.train.mse &&
                           second.train.da == first.train.da;
    c.require(identical, "snapshot replay changed the metrics");

    c.stats = "12-point sweep identical at 1 vs 4 threads, snapshot replay exact";
    return c;
}

// ---------------------------------------------------------------------------
// 11. The largest supported reservoir finishes a short forecast in budget.
// ---------------------------------------------------------------------------
Check large_reservoir_budget() {
    Check c;
    const auto t0 = Clock::now();

    qrc::SyntheticParams p;
    p.length = 100;
    p.period = 16.0;
    const qrc::TimeSeries series = qrc::gen_synthetic(qrc::Synthetic::Sine, p, 2);

    qrc::ReservoirSpec spec;
    spec.n_qubits = 6;
    spec.seed = 2;

    qrc::PipelineOptions opts;
    opts.threads = 4;
    const qrc::ForecastReport report = qrc::forecast_pipeline(series, spec, 6, 1e-4, 0.6, opts);

    const double elapsed = seconds_since(t0);
    c.require(elapsed < 900.0, "took " + num(elapsed) + "s");
    c.require(std::isfinite(report.test.mse), "non-finite test mse");
    c.require(report.test.da >= 0.0 && report.test.da <= 1.0,
              "direction accuracy out of range");
    c.stats = "64-dim states over 100 samples in " + num(elapsed) + "s, test da " +
              num(report.test.da);
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Check result;
    };
    std::vector<Entry> entries;
    const auto t0 = Clock::now();

    auto run = [&](const char* name, auto&& fn) {
        Check check;
        try {
            check = fn();
        } catch (const std::exception& e) {
            check.ok = false;
            check.why = std::string("exception: ") + e.what();
        }
        entries.push_back({name, check});
        const Check& c = entries.back().result;
        std::printf("[%s] %-34s %s\n", c.ok ? "PASS" : "FAIL", name,
                    (c.ok ? c.stats : c.why).c_str());
        std::fflush(stdout);
    };

    qrc::ForecastReport sine_report;
    run("physical-state invariants", physical_state_invariants);
    run("rabi oscillation oracle", rabi_oscillation_oracle);
    run("exact vs integrated evolution", exact_vs_integrated);
    run("ridge regression oracle", ridge_regression_oracle);
    run("split-count reproduction", split_count_reproduction);
    run("sine forecasting quality", [&] { return sine_forecasting(sine_report); });
    run("cross-day generalization", cross_day_generalization);
    run("moment-ratio oracles", moment_ratio_oracles);
    run("baseline model suite", baseline_suite);
    run("determinism and replay", determinism_suite);
    run("large-reservoir time budget", large_reservoir_budget);

    int failures = 0;
    for (const Entry& e : entries) {
        if (!e.result.ok) ++failures;
    }
    std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(entries.size()) - failures,
                entries.size(), seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
