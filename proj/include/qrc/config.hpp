#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrc/data.hpp"
#include "qrc/esn.hpp"
#include "qrc/mlp.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// Fully resolved run configuration. Defaults mirror the standard protocol:
/// N=5, delta0=8, omega0=6, delta=6, lambda=1e-4, gamma=1e-8, t_evolve=pi,
/// 3000 steps, 60/40 split, seed 0. The global seed drives the reservoir
/// draw, synthetic generation, and per-sweep-point seed derivation; the
/// baseline models keep their own seeds.
struct RunConfig {
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<std::string> models = {"qrc", "esn", "qiesn", "mlp"};

    // input
    std::string input_csv;
    Synthetic synthetic = Synthetic::Sine;
    SyntheticParams synthetic_params;
    std::string session;  // "", "pre", "in", "after"

    ReservoirSpec reservoir;

    // readout
    int delta = 6;
    double lambda = 1e-4;
    bool squared_features = false;

    double fraction = 0.6;

    EsnSpec esn;
    EsnSpec qiesn;
    MlpSpec mlp;

    // sweep
    std::vector<int> sweep_n_qubits = {1, 2, 3, 4, 5, 6};
    std::vector<int> sweep_delta0 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> sweep_omega0 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    // cross-day
    std::vector<std::string> future_csvs;
    bool reuse_train_scale = false;

    // smr
    std::vector<std::string> smr_csvs;
    std::vector<int> smr_orders = {4, 6, 8, 10, 12};
    std::vector<int> smr_subset = {8, 10, 12};
    double tail_slack = 0.0;

    // output
    std::string out_dir = ".";
    bool include_predictions = false;
    bool sum_mse = false;

    RunConfig();
};

/// Parses and validates a config document. Unknown keys are rejected with
/// their dotted field path; enum fields list the accepted names on error.
RunConfig parse_config(const nlohmann::json& j);

RunConfig load_config(const std::string& path);

/// Complete resolved snapshot; parse_config(config_to_json(c)) == c.
nlohmann::json config_to_json(const RunConfig& c);

}  // namespace qrc
