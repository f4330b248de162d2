#include "qrc/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace qrc {

namespace {

/// Tracks which keys of one JSON object were consumed so leftovers can be
/// rejected with their full path.
class ObjectReader {
public:
    ObjectReader(const nlohmann::json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw std::invalid_argument(path_ + ": expected an object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        if (!obj_.contains(key)) return;
        seen_.insert(key);
        try {
            out = obj_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument(member(key) + ": wrong type");
        }
    }

    template <typename Fn>
    void read_with(const char* key, Fn&& fn) {
        if (!obj_.contains(key)) return;
        seen_.insert(key);
        fn(obj_.at(key), member(key));
    }

    bool has(const char* key) const { return obj_.contains(key); }

    std::string member(const char* key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    /// Call after all reads: any unconsumed key is a config error.
    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw std::invalid_argument("unknown config key: " + member(it.key().c_str()));
            }
        }
    }

private:
    const nlohmann::json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Enum>
Enum enum_from(const nlohmann::json& j, const std::string& path,
               std::initializer_list<std::pair<const char*, Enum>> names) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        for (const auto& [name, value] : names) {
            if (s == name) return value;
        }
    }
    std::string allowed;
    for (const auto& [name, value] : names) {
        (void)value;
        allowed += allowed.empty() ? "" : ", ";
        allowed += name;
    }
    throw std::invalid_argument(path + ": expected one of " + allowed);
}

const char* encoding_name(Encoding e) {
    switch (e) {
        case Encoding::Detuning: return "detuning";
        case Encoding::Rabi: return "rabi";
        case Encoding::Both: return "both";
    }
    return "detuning";
}

const char* observable_name(Observable o) {
    return o == Observable::Inversion ? "inversion" : "excited-population";
}

const char* collapse_name(Collapse c) { return c == Collapse::RaisingLiteral ? "raising" : "lowering"; }

const char* feature_map_name(FeatureMap f) { return f == FeatureMap::Identity ? "identity" : "sin"; }

void parse_reservoir(const nlohmann::json& j, const std::string& path, ReservoirSpec& spec) {
    ObjectReader r(j, path);
    r.read("n_qubits", spec.n_qubits);
    r.read("delta0", spec.delta0);
    r.read("omega0", spec.omega0);
    r.read("v0", spec.v0);
    r.read("r_scale", spec.r_scale);
    r.read("spread", spec.spread);
    r.read("gamma", spec.gamma);
    r.read("t_evolve", spec.t_evolve);
    r.read("n_steps", spec.n_steps);
    r.read_with("encoding", [&](const nlohmann::json& v, const std::string& p) {
        spec.encoding = enum_from<Encoding>(v, p,
                                            {{"detuning", Encoding::Detuning},
                                             {"rabi", Encoding::Rabi},
                                             {"both", Encoding::Both}});
    });
    r.read_with("observable", [&](const nlohmann::json& v, const std::string& p) {
        spec.observable = enum_from<Observable>(v, p,
                                                {{"inversion", Observable::Inversion},
                                                 {"excited-population",
                                                  Observable::ExcitedPopulation}});
    });
    r.read_with("collapse", [&](const nlohmann::json& v, const std::string& p) {
        spec.collapse = enum_from<Collapse>(
            v, p, {{"raising", Collapse::RaisingLiteral}, {"lowering", Collapse::Lowering}});
    });
    r.finish();
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void parse_esn(const nlohmann::json& j, const std::string& path, EsnSpec& spec) {
    ObjectReader r(j, path);
    r.read("n_reservoir", spec.n_reservoir);
    r.read("spectral_radius", spec.spectral_radius);
    r.read("leak_rate", spec.leak_rate);
    r.read("sparsity", spec.sparsity);
    r.read("input_scale", spec.input_scale);
    r.read_with("feature_map", [&](const nlohmann::json& v, const std::string& p) {
        spec.feature_map = enum_from<FeatureMap>(
            v, p, {{"identity", FeatureMap::Identity}, {"sin", FeatureMap::Sin}});
    });
    r.read("seed", spec.seed);
    r.read("washout", spec.washout);
    r.finish();
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void parse_mlp(const nlohmann::json& j, const std::string& path, MlpSpec& spec) {
    ObjectReader r(j, path);
    int input_dim = spec.layer_sizes.front();
    std::vector<int> hidden(spec.layer_sizes.begin() + 1, spec.layer_sizes.end() - 1);
    r.read("input_dim", input_dim);
    r.read("hidden", hidden);
    r.read("epochs", spec.epochs);
    r.read("batch_size", spec.batch_size);
    r.read("learning_rate", spec.learning_rate);
    r.read("beta1", spec.beta1);
    r.read("beta2", spec.beta2);
    r.read("epsilon", spec.epsilon);
    r.read("validation_fraction", spec.validation_fraction);
    r.read("seed", spec.seed);
    r.finish();
    spec.layer_sizes.clear();
    spec.layer_sizes.push_back(input_dim);
    spec.layer_sizes.insert(spec.layer_sizes.end(), hidden.begin(), hidden.end());
    spec.layer_sizes.push_back(1);
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace

RunConfig::RunConfig() : qiesn(qiesn_spec()) {}

RunConfig parse_config(const nlohmann::json& j) {
    RunConfig c;
    ObjectReader root(j, "");
    root.read("seed", c.seed);
    root.read("threads", c.threads);
    root.read("models", c.models);

    root.read_with("input", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("csv", c.input_csv);
        r.read_with("synthetic", [&](const nlohmann::json& s, const std::string& sp) {
            if (!s.is_string()) throw std::invalid_argument(sp + ": expected a string");
            try {
                c.synthetic = synthetic_from_name(s.get<std::string>());
            } catch (const std::exception& e) {
                throw std::invalid_argument(sp + ": " + e.what());
            }
        });
        r.read("length", c.synthetic_params.length);
        r.read("period", c.synthetic_params.period);
        r.read("sigma", c.synthetic_params.sigma);
        r.read("session", c.session);
        r.finish();
        if (!c.session.empty() && c.session != "pre" && c.session != "in" && c.session != "after") {
            throw std::invalid_argument(p + ".session: expected one of pre, in, after");
        }
    });

    root.read_with("reservoir",
                   [&](const nlohmann::json& v, const std::string& p) { parse_reservoir(v, p, c.reservoir); });

    root.read_with("readout", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("delta", c.delta);
        r.read("lambda", c.lambda);
        r.read("squared_features", c.squared_features);
        r.finish();
        if (c.delta < 0) throw std::invalid_argument(p + ".delta: must be >= 0");
        if (c.lambda < 0.0) throw std::invalid_argument(p + ".lambda: must be >= 0");
    });

    root.read_with("split", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("fraction", c.fraction);
        r.finish();
        if (!(c.fraction > 0.0 && c.fraction < 1.0)) {
            throw std::invalid_argument(p + ".fraction: must be in (0,1)");
        }
    });

    root.read_with("esn", [&](const nlohmann::json& v, const std::string& p) { parse_esn(v, p, c.esn); });
    root.read_with("qiesn",
                   [&](const nlohmann::json& v, const std::string& p) { parse_esn(v, p, c.qiesn); });
    root.read_with("mlp", [&](const nlohmann::json& v, const std::string& p) { parse_mlp(v, p, c.mlp); });

    root.read_with("sweep", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("n_qubits", c.sweep_n_qubits);
        r.read("delta0", c.sweep_delta0);
        r.read("omega0", c.sweep_omega0);
        r.finish();
        auto check = [&](const std::vector<int>& list, const char* name, int lo, int hi) {
            if (list.empty()) throw std::invalid_argument(p + "." + name + ": empty list");
            for (int x : list) {
                if (x < lo || x > hi) {
                    throw std::invalid_argument(p + "." + name + ": value " + std::to_string(x) +
                                                " outside [" + std::to_string(lo) + "," +
                                                std::to_string(hi) + "]");
                }
            }
        };
        check(c.sweep_n_qubits, "n_qubits", 1, 6);
        check(c.sweep_delta0, "delta0", 1, 10);
        check(c.sweep_omega0, "omega0", 1, 10);
    });

    root.read_with("cross_day", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("futures", c.future_csvs);
        r.read("reuse_scale", c.reuse_train_scale);
        r.finish();
    });

    root.read_with("smr", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("series", c.smr_csvs);
        r.read("orders", c.smr_orders);
        r.read("subset", c.smr_subset);
        r.read("slack", c.tail_slack);
        r.finish();
    });

    root.read_with("output", [&](const nlohmann::json& v, const std::string& p) {
        ObjectReader r(v, p);
        r.read("dir", c.out_dir);
        r.read("include_predictions", c.include_predictions);
        r.read("sum_mse", c.sum_mse);
        r.finish();
    });

    root.finish();
    if (c.threads < 1) throw std::invalid_argument("threads: must be >= 1");
    c.reservoir.seed = c.seed;
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": invalid JSON: " + e.what());
    }
    return parse_config(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["models"] = c.models;
    j["input"] = {{"csv", c.input_csv},
                  {"synthetic", synthetic_name(c.synthetic)},
                  {"length", c.synthetic_params.length},
                  {"period", c.synthetic_params.period},
                  {"sigma", c.synthetic_params.sigma},
                  {"session", c.session}};
    j["reservoir"] = {{"n_qubits", c.reservoir.n_qubits},
                      {"delta0", c.reservoir.delta0},
                      {"omega0", c.reservoir.omega0},
                      {"v0", c.reservoir.v0},
                      {"r_scale", c.reservoir.r_scale},
                      {"spread", c.reservoir.spread},
                      {"gamma", c.reservoir.gamma},
                      {"t_evolve", c.reservoir.t_evolve},
                      {"n_steps", c.reservoir.n_steps},
                      {"encoding", encoding_name(c.reservoir.encoding)},
                      {"observable", observable_name(c.reservoir.observable)},
                      {"collapse", collapse_name(c.reservoir.collapse)}};
    j["readout"] = {{"delta", c.delta},
                    {"lambda", c.lambda},
                    {"squared_features", c.squared_features}};
    j["split"] = {{"fraction", c.fraction}};
    auto esn_json = [](const EsnSpec& e) {
        return nlohmann::json{{"n_reservoir", e.n_reservoir},
                              {"spectral_radius", e.spectral_radius},
                              {"leak_rate", e.leak_rate},
                              {"sparsity", e.sparsity},
                              {"input_scale", e.input_scale},
                              {"feature_map", feature_map_name(e.feature_map)},
                              {"seed", e.seed},
                              {"washout", e.washout}};
    };
    j["esn"] = esn_json(c.esn);
    j["qiesn"] = esn_json(c.qiesn);
    j["mlp"] = {{"input_dim", c.mlp.layer_sizes.front()},
                {"hidden", std::vector<int>(c.mlp.layer_sizes.begin() + 1,
                                            c.mlp.layer_sizes.end() - 1)},
                {"epochs", c.mlp.epochs},
                {"batch_size", c.mlp.batch_size},
                {"learning_rate", c.mlp.learning_rate},
                {"beta1", c.mlp.beta1},
                {"beta2", c.mlp.beta2},
                {"epsilon", c.mlp.epsilon},
                {"validation_fraction", c.mlp.validation_fraction},
                {"seed", c.mlp.seed}};
    j["sweep"] = {{"n_qubits", c.sweep_n_qubits},
                  {"delta0", c.sweep_delta0},
                  {"omega0", c.sweep_omega0}};
    j["cross_day"] = {{"futures", c.future_csvs}, {"reuse_scale", c.reuse_train_scale}};
    j["smr"] = {{"series", c.smr_csvs},
                {"orders", c.smr_orders},
                {"subset", c.smr_subset},
                {"slack", c.tail_slack}};
    j["output"] = {{"dir", c.out_dir},
                   {"include_predictions", c.include_predictions},
                   {"sum_mse", c.sum_mse}};
    return j;
}

}  // namespace qrc
