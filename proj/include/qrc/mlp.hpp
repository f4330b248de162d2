#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qrc {

struct MlpSpec {
    std::vector<int> layer_sizes = {156, 156, 136, 1};  // input, hidden..., output
    int epochs = 60;
    int batch_size = 16;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double validation_fraction = 0.5;  // chronological tail held out for model selection
    std::uint64_t seed = 0;

    void validate() const;
};

/// Fully-connected net, ReLU hidden layers, linear output.
/// weights[l] has shape layer_sizes[l+1] x layer_sizes[l].
struct MlpModel {
    std::vector<int> layer_sizes;
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

struct MlpGradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

struct AdamState {
    MlpGradients m;
    MlpGradients v;
    long t = 0;
};

/// Seeded He-uniform weights (limit sqrt(6/fan_in)), zero biases.
MlpModel mlp_init(const MlpSpec& spec);

/// Forward pass over column-sample inputs (input_dim x n); returns one
/// output per column.
Eigen::VectorXd mlp_predict(const MlpModel& model, const Eigen::MatrixXd& inputs);

/// Batch mean-squared-error loss and its analytic gradients.
double mlp_loss_and_grad(const MlpModel& model, const Eigen::MatrixXd& x,
                         const Eigen::VectorXd& y, MlpGradients& grads);

/// One Adam update; a zero gradient leaves the parameters unchanged.
void adam_step(MlpModel& model, const MlpGradients& grads, AdamState& state, const MlpSpec& spec);

/// Mini-batch Adam for spec.epochs over the chronological head of the data,
/// holding out the tail fraction for validation; returns the parameters with
/// the lowest validation MSE seen. Throws on a non-finite loss.
MlpModel mlp_train(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                   const MlpSpec& spec);

/// Sliding windows for one-step forecasting: column c holds
/// series[c..c+window-1] (oldest first) and targets[c] = series[c+window],
/// so target_index[c] = c + window into the source series.
struct WindowSet {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd targets;
    std::vector<Eigen::Index> target_index;
};

WindowSet delay_windows(const std::vector<double>& series, int window);

}  // namespace qrc
