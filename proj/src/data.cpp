#include "qrc/data.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qrc/random.hpp"

namespace qrc {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        std::size_t start = field.find_first_not_of(' ');
        fields.push_back(start == std::string::npos ? "" : field.substr(start));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_value(const std::string& cell, std::size_t line_no) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &consumed);
    } catch (const std::exception&) {
        throw std::runtime_error("row " + std::to_string(line_no) + ": non-numeric volume '" +
                                 cell + "'");
    }
    if (consumed != cell.size()) {
        throw std::runtime_error("row " + std::to_string(line_no) + ": non-numeric volume '" +
                                 cell + "'");
    }
    if (!std::isfinite(v)) {
        throw std::runtime_error("row " + std::to_string(line_no) + ": non-finite volume");
    }
    return v;
}

/// Minutes since midnight from an ISO-8601 timestamp, e.g. 2025-07-09T09:30:00.
int minutes_of_day(const std::string& stamp, std::size_t row) {
    const std::size_t t = stamp.find('T');
    if (t == std::string::npos || t + 5 > stamp.size()) {
        throw std::runtime_error("row " + std::to_string(row) +
                                 ": timestamp lacks an ISO-8601 time component: '" + stamp + "'");
    }
    const std::string hh = stamp.substr(t + 1, 2);
    const std::string mm = stamp.substr(t + 4, 2);
    if (stamp[t + 3] != ':' || hh.find_first_not_of("0123456789") != std::string::npos ||
        mm.find_first_not_of("0123456789") != std::string::npos) {
        throw std::runtime_error("row " + std::to_string(row) + ": malformed timestamp '" + stamp +
                                 "'");
    }
    return std::stoi(hh) * 60 + std::stoi(mm);
}

}  // namespace

TimeSeries load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty series");
    const std::vector<std::string> header = split_fields(line);

    int vol_col = -1;
    int ts_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "volume") vol_col = static_cast<int>(i);
        if (header[i] == "timestamp") ts_col = static_cast<int>(i);
    }
    if (vol_col < 0) throw std::runtime_error(path + ": missing volume column");

    TimeSeries ts;
    ts.label = std::filesystem::path(path).stem().string();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_fields(line);
        if (static_cast<int>(fields.size()) <= vol_col) {
            throw std::runtime_error("row " + std::to_string(line_no) + ": missing volume cell");
        }
        ts.values.push_back(parse_value(fields[static_cast<std::size_t>(vol_col)], line_no));
        if (ts_col >= 0 && static_cast<int>(fields.size()) > ts_col) {
            ts.timestamps.push_back(fields[static_cast<std::size_t>(ts_col)]);
        }
    }
    if (ts.values.empty()) throw std::runtime_error(path + ": empty series");
    if (!ts.timestamps.empty() && ts.timestamps.size() != ts.values.size()) {
        throw std::runtime_error(path + ": timestamp column incomplete");
    }
    return ts;
}

TimeSeries normalize_max(const TimeSeries& ts) {
    if (ts.values.empty()) throw std::invalid_argument("empty series");
    const double mx = *std::max_element(ts.values.begin(), ts.values.end());
    if (!(mx > 0.0)) throw std::invalid_argument("non-positive maximum, cannot normalize");
    for (double v : ts.values) {
        if (v < 0.0) throw std::invalid_argument("negative value cannot be max-normalized into [0,1]");
    }
    TimeSeries out = ts;
    for (double& v : out.values) v /= mx;
    out.scale = mx;
    return out;
}

DatasetSplit split_train_test(const TimeSeries& ts, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("fraction must be in (0,1)");
    const std::size_t k = ts.size();
    if (k < 2) throw std::invalid_argument("series too short to split");
    // Epsilon keeps exact products (0.6 * 1255 = 753) from landing one ulp low.
    const auto n_train =
        static_cast<std::size_t>(std::floor(fraction * static_cast<double>(k) + 1e-9));
    if (n_train == 0 || n_train >= k) throw std::invalid_argument("degenerate split");

    DatasetSplit split;
    split.fraction = fraction;
    split.train.label = ts.label;
    split.test.label = ts.label;
    split.train.scale = ts.scale;
    split.test.scale = ts.scale;
    split.train.values.assign(ts.values.begin(), ts.values.begin() + static_cast<long>(n_train));
    split.test.values.assign(ts.values.begin() + static_cast<long>(n_train), ts.values.end());
    if (!ts.timestamps.empty()) {
        split.train.timestamps.assign(ts.timestamps.begin(),
                                      ts.timestamps.begin() + static_cast<long>(n_train));
        split.test.timestamps.assign(ts.timestamps.begin() + static_cast<long>(n_train),
                                     ts.timestamps.end());
    }
    return split;
}

std::pair<std::vector<double>, std::vector<double>> make_targets(const TimeSeries& ts) {
    if (ts.size() < 2) throw std::invalid_argument("series too short for one-step targets");
    std::vector<double> inputs(ts.values.begin(), ts.values.end() - 1);
    std::vector<double> targets(ts.values.begin() + 1, ts.values.end());
    return {std::move(inputs), std::move(targets)};
}

TimeSeries gen_synthetic(Synthetic kind, const SyntheticParams& params, std::uint64_t seed) {
    if (params.length < 1) throw std::invalid_argument("length must be >= 1");
    const bool sine_like = kind == Synthetic::Sine || kind == Synthetic::NoisySine;
    if (sine_like && !(params.period > 0.0)) throw std::invalid_argument("period must be > 0");
    if (kind == Synthetic::NoisySine && params.sigma < 0.0) {
        throw std::invalid_argument("sigma must be >= 0");
    }

    constexpr double two_pi = 6.283185307179586476925286766559;
    TimeSeries ts;
    ts.label = synthetic_name(kind);
    ts.values.resize(params.length);
    Rng stream(seed);
    switch (kind) {
        case Synthetic::Sine:
            for (std::size_t k = 0; k < params.length; ++k) {
                ts.values[k] = 0.5 + 0.45 * std::sin(two_pi * static_cast<double>(k) / params.period);
            }
            break;
        case Synthetic::NoisySine:
            for (std::size_t k = 0; k < params.length; ++k) {
                ts.values[k] = 0.5 + 0.45 * std::sin(two_pi * static_cast<double>(k) / params.period) +
                               params.sigma * stream.normal();
            }
            break;
        case Synthetic::RandomWalk: {
            double level = 0.0;
            for (auto& v : ts.values) {
                level += stream.normal();
                v = level;
            }
            const auto [mn, mx] = std::minmax_element(ts.values.begin(), ts.values.end());
            const double lo = *mn;
            const double span = *mx - lo;
            if (span > 0.0) {
                for (auto& v : ts.values) v = (v - lo) / span;
            } else {
                for (auto& v : ts.values) v = 0.5;
            }
            break;
        }
        case Synthetic::GaussianIID:
            for (auto& v : ts.values) v = stream.normal();
            break;
    }
    return ts;
}

TimeSeries filter_session(const TimeSeries& ts, Session session) {
    if (ts.timestamps.size() != ts.values.size() || ts.timestamps.empty()) {
        throw std::invalid_argument("session filtering requires a timestamp per value");
    }
    int lo = 0;
    int hi = 0;
    switch (session) {
        case Session::PreMarket:
            lo = 4 * 60;
            hi = 9 * 60 + 29;
            break;
        case Session::InMarket:
            lo = 9 * 60 + 30;
            hi = 16 * 60;
            break;
        case Session::AfterMarket:
            lo = 16 * 60 + 1;
            hi = 20 * 60;
            break;
    }
    TimeSeries out;
    out.label = ts.label;
    out.scale = ts.scale;
    for (std::size_t i = 0; i < ts.values.size(); ++i) {
        const int m = minutes_of_day(ts.timestamps[i], i + 2);
        if (m >= lo && m <= hi) {
            out.values.push_back(ts.values[i]);
            out.timestamps.push_back(ts.timestamps[i]);
        }
    }
    return out;
}

void write_csv(const std::string& path, const TimeSeries& ts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    const bool stamped = ts.timestamps.size() == ts.values.size() && !ts.timestamps.empty();
    out << (stamped ? "timestamp,volume\n" : "volume\n");
    char buf[40];
    for (std::size_t i = 0; i < ts.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", ts.values[i]);
        if (stamped) out << ts.timestamps[i] << ',';
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

const char* synthetic_name(Synthetic kind) {
    switch (kind) {
        case Synthetic::Sine: return "sine";
        case Synthetic::NoisySine: return "noisy-sine";
        case Synthetic::RandomWalk: return "random-walk";
        case Synthetic::GaussianIID: return "gaussian-iid";
    }
    return "sine";
}

Synthetic synthetic_from_name(const std::string& name) {
    if (name == "sine") return Synthetic::Sine;
    if (name == "noisy-sine") return Synthetic::NoisySine;
    if (name == "random-walk") return Synthetic::RandomWalk;
    if (name == "gaussian-iid") return Synthetic::GaussianIID;
    throw std::invalid_argument("unknown synthetic kind: " + name);
}

}  // namespace qrc
