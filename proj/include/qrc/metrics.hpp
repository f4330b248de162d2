#pragma once

#include <string>
#include <vector>

namespace qrc {

/// Percentage-error bands: [0,5] Excellent, (5,10] Good, (10,20] Reasonable,
/// above 20 Poor.
enum class MapeCategory { Excellent, Good, Reasonable, Poor };

struct MapeResult {
    double percent = 0.0;
    MapeCategory category = MapeCategory::Excellent;
    int n_excluded = 0;  // targets with |y| < 1e-12, skipped from the mean
};

struct DaResult {
    double da = 0.0;
    int ties = 0;  // steps where either consecutive difference was exactly 0
};

struct MetricsReport {
    double mse = 0.0;
    double nmse = 0.0;
    double rmse = 0.0;
    double mape_percent = 0.0;
    MapeCategory mape_category = MapeCategory::Excellent;
    double da = 0.0;
    int n_points = 0;
    int n_ties = 0;
    int n_mape_excluded = 0;
    bool flat_series = false;  // every direction comparison was a tie
};

/// Mean squared error, (1/K) sum |y - yhat|^2.
double mse(const std::vector<double>& y, const std::vector<double>& yhat);

/// mse divided by the population variance of y.
double nmse(const std::vector<double>& y, const std::vector<double>& yhat);

double rmse(const std::vector<double>& y, const std::vector<double>& yhat);

/// Mean absolute percentage error over targets with |y| >= 1e-12; smaller
/// targets are excluded and counted. Throws when every target is excluded.
MapeResult mape(const std::vector<double>& y, const std::vector<double>& yhat);

/// Fraction of steps k >= 1 where sgn(y_k - y_{k-1}) equals
/// sgn(yhat_k - yhat_{k-1}) exactly among {+,-,0}. Ties (either difference
/// zero) are reported, not dropped from the denominator.
DaResult direction_accuracy(const std::vector<double>& y, const std::vector<double>& yhat);

/// All metrics in one pass. Metrics whose preconditions fail (zero-variance
/// target, all-zero targets) are reported as NaN rather than throwing so a
/// flat series still yields a diagnosable report. With sum_mse the mse/rmse
/// fields use the summed convention (no 1/K); nmse stays mean-based.
MetricsReport evaluate(const std::vector<double>& y, const std::vector<double>& yhat,
                       bool sum_mse = false);

const char* mape_category_name(MapeCategory c);

}  // namespace qrc
