#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qrc {

/// Tail profile of one series: empirical standardized moments Gamma_n, their
/// Gaussian references (n-1)!!, and the ratios R_n = Gaussian/empirical.
/// An undefined ratio (zero empirical moment) is stored as NaN.
struct MomentProfile {
    std::vector<int> orders;
    std::vector<double> gamma_emp;
    std::vector<double> gamma_gauss;
    std::vector<double> smr;
    std::string label;
};

/// R_n falling with n signals heavier-than-Gaussian tails, rising lighter.
enum class TailClass { Heavy, Light, NonMonotonic };

/// (n-1)!! for even n in [2,20].
double gaussian_moment(int n);

/// Gamma_n = m_n / m_2^{n/2} with population central moments m_j =
/// (1/K) sum (y - mean)^j. Throws on K < 2 or zero variance.
double standardized_moment(const std::vector<double>& series, int n);

MomentProfile smr_profile(const std::vector<double>& series,
                          const std::vector<int>& orders = {4, 6, 8, 10, 12},
                          const std::string& label = "");

/// Heavy when the defined ratios are strictly decreasing across orders,
/// Light when strictly increasing; `slack` admits near-ties in either
/// direction. Requires at least three defined orders.
TailClass classify_tail(const MomentProfile& profile, double slack = 0.0);

/// Sample Pearson correlation; throws on constant input.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct CorrelationResult {
    Eigen::MatrixXd matrix;
    double min_offdiag = 0.0;
    double max_offdiag = 0.0;
};

/// Pairwise Pearson of the profiles' ratio vectors restricted to `subset`
/// (which must be contained in every profile's orders).
CorrelationResult correlation_matrix(const std::vector<MomentProfile>& profiles,
                                     const std::vector<int>& subset);

const char* tail_class_name(TailClass c);

}  // namespace qrc
