#include "qrc/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qrc {

namespace {

void check_lengths(const std::vector<double>& y, const std::vector<double>& yhat) {
    if (y.empty()) throw std::invalid_argument("empty metric input");
    if (y.size() != yhat.size()) {
        throw std::invalid_argument("metric length mismatch: " + std::to_string(y.size()) +
                                    " vs " + std::to_string(yhat.size()));
    }
}

double population_variance(const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    return var / static_cast<double>(y.size());
}

int sign_of(double d) { return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0); }

MapeCategory categorize(double percent) {
    if (percent <= 5.0) return MapeCategory::Excellent;
    if (percent <= 10.0) return MapeCategory::Good;
    if (percent <= 20.0) return MapeCategory::Reasonable;
    return MapeCategory::Poor;
}

}  // namespace

double mse(const std::vector<double>& y, const std::vector<double>& yhat) {
    check_lengths(y, yhat);
    double acc = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double d = y[k] - yhat[k];
        acc += d * d;
    }
    return acc / static_cast<double>(y.size());
}

double nmse(const std::vector<double>& y, const std::vector<double>& yhat) {
    const double err = mse(y, yhat);
    const double var = population_variance(y);
    if (!(var > 0.0)) throw std::invalid_argument("zero-variance target in nmse");
    return err / var;
}

double rmse(const std::vector<double>& y, const std::vector<double>& yhat) {
    return std::sqrt(mse(y, yhat));
}

MapeResult mape(const std::vector<double>& y, const std::vector<double>& yhat) {
    check_lengths(y, yhat);
    double acc = 0.0;
    int used = 0;
    int excluded = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (std::abs(y[k]) < 1e-12) {
            ++excluded;
            continue;
        }
        acc += std::abs((y[k] - yhat[k]) / y[k]);
        ++used;
    }
    if (used == 0) throw std::invalid_argument("all targets zero in mape");
    MapeResult r;
    r.percent = 100.0 * acc / used;
    r.category = categorize(r.percent);
    r.n_excluded = excluded;
    return r;
}

DaResult direction_accuracy(const std::vector<double>& y, const std::vector<double>& yhat) {
    check_lengths(y, yhat);
    if (y.size() < 2) throw std::invalid_argument("direction accuracy needs >= 2 points");
    int correct = 0;
    int ties = 0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        const int actual = sign_of(y[k] - y[k - 1]);
        const int predicted = sign_of(yhat[k] - yhat[k - 1]);
        if (actual == 0 || predicted == 0) ++ties;
        if (actual == predicted) ++correct;
    }
    DaResult r;
    r.da = static_cast<double>(correct) / static_cast<double>(y.size() - 1);
    r.ties = ties;
    return r;
}

MetricsReport evaluate(const std::vector<double>& y, const std::vector<double>& yhat,
                       bool sum_mse) {
    check_lengths(y, yhat);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    MetricsReport rep;
    rep.n_points = static_cast<int>(y.size());

    const double mean_mse = mse(y, yhat);
    rep.mse = sum_mse ? mean_mse * static_cast<double>(y.size()) : mean_mse;
    rep.rmse = std::sqrt(rep.mse);

    const double var = population_variance(y);
    rep.nmse = var > 0.0 ? mean_mse / var : nan;

    try {
        const MapeResult m = mape(y, yhat);
        rep.mape_percent = m.percent;
        rep.mape_category = m.category;
        rep.n_mape_excluded = m.n_excluded;
    } catch (const std::invalid_argument&) {
        rep.mape_percent = nan;
        rep.n_mape_excluded = rep.n_points;
    }

    if (y.size() >= 2) {
        const DaResult d = direction_accuracy(y, yhat);
        rep.da = d.da;
        rep.n_ties = d.ties;
        rep.flat_series = d.ties == rep.n_points - 1;
    } else {
        rep.da = nan;
    }
    return rep;
}

const char* mape_category_name(MapeCategory c) {
    switch (c) {
        case MapeCategory::Excellent: return "excellent";
        case MapeCategory::Good: return "good";
        case MapeCategory::Reasonable: return "reasonable";
        case MapeCategory::Poor: return "poor";
    }
    return "poor";
}

}  // namespace qrc
