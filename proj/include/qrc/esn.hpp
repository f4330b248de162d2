#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qrc/feature.hpp"
#include "qrc/random.hpp"

namespace qrc {

enum class FeatureMap { Identity, Sin };

struct EsnSpec {
    int n_reservoir = 400;
    double spectral_radius = 0.95;
    double leak_rate = 0.8;
    double sparsity = 0.0;  // fraction of recurrent weights zeroed; 0 = dense
    double input_scale = 1.0;
    FeatureMap feature_map = FeatureMap::Identity;
    std::uint64_t seed = 42;
    int washout = 20;

    void validate() const;
};

/// The quantum-inspired variant: sparsity 0.1, sin input map, seed 42.
EsnSpec qiesn_spec();

struct EsnState {
    Eigen::MatrixXd w;     // recurrent weights, spectral radius = spec value
    Eigen::MatrixXd w_in;  // input weights, n_reservoir x input_dim
    Eigen::VectorXd x;     // reservoir activations
    EsnSpec spec;
};

/// Largest eigenvalue magnitude (dense solve; handles complex pairs).
double spectral_radius(const Eigen::MatrixXd& m);

/// Recurrent weights drawn uniform in [-1,1], a seeded fraction zeroed, then
/// rescaled to the requested spectral radius; one redraw is attempted if the
/// draw degenerates to radius zero. Input weights uniform in
/// [-input_scale, input_scale]; state starts at zero.
EsnState esn_init(const EsnSpec& spec, int input_dim = 1);

/// Leaky-integrator update x <- (1-a) x + a tanh(W_in f(u) + W x), where f
/// is the spec's feature map applied element-wise to the input.
void esn_step(EsnState& state, const Eigen::VectorXd& u);
void esn_step(EsnState& state, double u);

/// Column k = reservoir state after consuming u(t_0..t_k); the matrix's
/// washout field flags the initial columns to exclude from training.
FeatureMatrix esn_features(const std::vector<double>& series, const EsnSpec& spec);

}  // namespace qrc
