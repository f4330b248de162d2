#include "qrc/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qrc {

namespace {

double central_moment(const std::vector<double>& y, double mean, int n) {
    double acc = 0.0;
    for (double v : y) acc += std::pow(v - mean, n);
    return acc / static_cast<double>(y.size());
}

double mean_of(const std::vector<double>& y) {
    double m = 0.0;
    for (double v : y) m += v;
    return m / static_cast<double>(y.size());
}

}  // namespace

double gaussian_moment(int n) {
    if (n < 2 || n > 20 || n % 2 != 0) {
        throw std::invalid_argument("order must be even and in [2,20]");
    }
    double f = 1.0;
    for (int k = n - 1; k > 1; k -= 2) f *= k;
    return f;
}

double standardized_moment(const std::vector<double>& series, int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("order must be even and >= 2");
    if (series.size() < 2) throw std::invalid_argument("series too short for moments");
    const double mu = mean_of(series);
    const double m2 = central_moment(series, mu, 2);
    if (!(m2 > 0.0)) throw std::invalid_argument("zero variance, moments undefined");
    return central_moment(series, mu, n) / std::pow(m2, n / 2.0);
}

MomentProfile smr_profile(const std::vector<double>& series, const std::vector<int>& orders,
                          const std::string& label) {
    MomentProfile p;
    p.orders = orders;
    p.label = label;
    p.gamma_emp.reserve(orders.size());
    p.gamma_gauss.reserve(orders.size());
    p.smr.reserve(orders.size());
    for (int n : orders) {
        const double emp = standardized_moment(series, n);
        const double ref = gaussian_moment(n);
        p.gamma_emp.push_back(emp);
        p.gamma_gauss.push_back(ref);
        p.smr.push_back(emp != 0.0 ? ref / emp : std::numeric_limits<double>::quiet_NaN());
    }
    return p;
}

TailClass classify_tail(const MomentProfile& profile, double slack) {
    std::vector<double> defined;
    for (double r : profile.smr) {
        if (std::isfinite(r)) defined.push_back(r);
    }
    if (defined.size() < 3) throw std::invalid_argument("need >= 3 defined orders to classify");

    bool decreasing = true;
    bool increasing = true;
    for (std::size_t i = 1; i < defined.size(); ++i) {
        if (!(defined[i] < defined[i - 1] + slack)) decreasing = false;
        if (!(defined[i] > defined[i - 1] - slack)) increasing = false;
    }
    if (decreasing && !increasing) return TailClass::Heavy;
    if (increasing && !decreasing) return TailClass::Light;
    if (decreasing && increasing) return TailClass::NonMonotonic;  // slack swallowed both
    return TailClass::NonMonotonic;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson needs >= 2 points");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw std::invalid_argument("constant vector in pearson");
    return sxy / std::sqrt(sxx * syy);
}

CorrelationResult correlation_matrix(const std::vector<MomentProfile>& profiles,
                                     const std::vector<int>& subset) {
    if (profiles.size() < 2) throw std::invalid_argument("need >= 2 profiles");
    if (subset.empty()) throw std::invalid_argument("empty order subset");

    std::vector<std::vector<double>> rows;
    rows.reserve(profiles.size());
    for (const MomentProfile& p : profiles) {
        std::vector<double> r;
        for (int n : subset) {
            std::size_t pos = 0;
            while (pos < p.orders.size() && p.orders[pos] != n) ++pos;
            if (pos == p.orders.size()) {
                throw std::invalid_argument("profile '" + p.label + "' lacks order " +
                                            std::to_string(n));
            }
            if (!std::isfinite(p.smr[pos])) {
                throw std::invalid_argument("profile '" + p.label + "' has undefined ratio at order " +
                                            std::to_string(n));
            }
            r.push_back(p.smr[pos]);
        }
        rows.push_back(std::move(r));
    }

    const auto m = static_cast<Eigen::Index>(profiles.size());
    CorrelationResult res;
    res.matrix = Eigen::MatrixXd::Identity(m, m);
    res.min_offdiag = 1.0;
    res.max_offdiag = -1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const double c = pearson(rows[static_cast<std::size_t>(i)],
                                     rows[static_cast<std::size_t>(j)]);
            res.matrix(i, j) = c;
            res.matrix(j, i) = c;
            res.min_offdiag = std::min(res.min_offdiag, c);
            res.max_offdiag = std::max(res.max_offdiag, c);
        }
    }
    return res;
}

const char* tail_class_name(TailClass c) {
    switch (c) {
        case TailClass::Heavy: return "heavy";
        case TailClass::Light: return "light";
        case TailClass::NonMonotonic: return "non-monotonic";
    }
    return "non-monotonic";
}

}  // namespace qrc
