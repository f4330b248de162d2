#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrc {

/// A univariate series in chronological order. `scale` holds the divisor
/// applied by normalize_max so the original magnitudes can be recovered.
struct TimeSeries {
    std::vector<double> values;
    std::vector<std::string> timestamps;  // empty when the source has none
    std::string label;
    std::optional<double> scale;

    std::size_t size() const { return values.size(); }
};

struct DatasetSplit {
    TimeSeries train;
    TimeSeries test;
    double fraction = 0.0;
};

enum class Synthetic { Sine, NoisySine, RandomWalk, GaussianIID };

/// Trading-day windows (all boundaries inclusive, minutes since midnight):
/// pre-market 4:00-9:29, in-market 9:30-16:00, after-market 16:01-20:00.
enum class Session { PreMarket, InMarket, AfterMarket };

struct SyntheticParams {
    std::size_t length = 400;
    double period = 16.0;  // Sine, NoisySine
    double sigma = 0.05;   // NoisySine noise scale
};

/// Reads a CSV with a header row naming a required `volume` column and an
/// optional `timestamp` column. Row order is preserved; label = file stem.
/// Throws on a missing volume column, a non-numeric or non-finite cell
/// (cited by 1-based file line), or a file with no data rows.
TimeSeries load_csv(const std::string& path);

/// Divides every value by the series maximum and records it in `scale`.
/// Requires a positive maximum and non-negative values so the result lies
/// in [0,1] with max exactly 1.
TimeSeries normalize_max(const TimeSeries& ts);

/// Chronological split: train = first floor(fraction*K) points (computed
/// with a small epsilon so exact products are not lost to rounding), test =
/// remainder. Throws if either side would be empty.
DatasetSplit split_train_test(const TimeSeries& ts, double fraction);

/// One-step forecasting pairs: inputs = u(t_0..t_{K-2}), targets =
/// u(t_1..t_{K-1}). The true past input drives the reservoir at every step.
std::pair<std::vector<double>, std::vector<double>> make_targets(const TimeSeries& ts);

/// Sine: 0.5 + 0.45 sin(2 pi k / period). NoisySine adds seeded Gaussian
/// noise of scale sigma. RandomWalk: cumulative Gaussian steps rescaled to
/// [0,1]. GaussianIID: standard normal draws.
TimeSeries gen_synthetic(Synthetic kind, const SyntheticParams& params, std::uint64_t seed);

/// Keeps rows whose timestamp falls in the given session window. Requires
/// ISO-8601 timestamps with a time-of-day component ("...THH:MM...").
TimeSeries filter_session(const TimeSeries& ts, Session session);

/// Writes `timestamp,volume` rows (or a bare `volume` column when the
/// series has no timestamps) with round-trip double precision.
void write_csv(const std::string& path, const TimeSeries& ts);

const char* synthetic_name(Synthetic kind);
Synthetic synthetic_from_name(const std::string& name);

}  // namespace qrc
