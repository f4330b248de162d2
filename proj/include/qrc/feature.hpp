#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace qrc {

/// Readout features, rows = features, columns = time samples. Carries the
/// embedding metadata needed to apply a trained readout to new series.
struct FeatureMatrix {
    Eigen::MatrixXd entries;      // F x K
    int delay = 0;                // lags stacked per column (0 = raw readouts)
    bool has_bias = false;        // constant-1 row appended
    int washout = 0;              // leading columns to exclude from training
    std::uint64_t spec_hash = 0;  // ties features to one reservoir draw

    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }
};

}  // namespace qrc
