#include "qrc/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qrc/random.hpp"

namespace qrc {

void MlpSpec::validate() const {
    if (layer_sizes.size() < 2) throw std::invalid_argument("need at least input and output layers");
    for (int s : layer_sizes) {
        if (s < 1) throw std::invalid_argument("layer sizes must be >= 1");
    }
    if (layer_sizes.back() != 1) throw std::invalid_argument("output layer must have size 1");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw std::invalid_argument("validation_fraction must be in (0,1)");
    }
}

MlpModel mlp_init(const MlpSpec& spec) {
    spec.validate();
    Rng stream(spec.seed);
    MlpModel model;
    model.layer_sizes = spec.layer_sizes;
    const std::size_t layers = spec.layer_sizes.size() - 1;
    model.weights.resize(layers);
    model.biases.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const int fan_in = spec.layer_sizes[l];
        const int fan_out = spec.layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / fan_in);
        model.weights[l].resize(fan_out, fan_in);
        for (int i = 0; i < fan_out; ++i) {
            for (int j = 0; j < fan_in; ++j) model.weights[l](i, j) = stream.uniform(-limit, limit);
        }
        model.biases[l] = Eigen::VectorXd::Zero(fan_out);
    }
    return model;
}

namespace {

void check_input(const MlpModel& model, const Eigen::MatrixXd& x) {
    if (x.rows() != model.layer_sizes.front()) {
        throw std::invalid_argument("input dimension " + std::to_string(x.rows()) +
                                    " does not match layer width " +
                                    std::to_string(model.layer_sizes.front()));
    }
}

MlpGradients zero_gradients(const MlpModel& model) {
    MlpGradients g;
    g.weights.reserve(model.weights.size());
    g.biases.reserve(model.biases.size());
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        g.weights.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
        g.biases.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
    }
    return g;
}

}  // namespace

Eigen::VectorXd mlp_predict(const MlpModel& model, const Eigen::MatrixXd& inputs) {
    check_input(model, inputs);
    Eigen::MatrixXd a = inputs;
    const std::size_t layers = model.weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        Eigen::MatrixXd z = (model.weights[l] * a).colwise() + model.biases[l];
        if (l + 1 < layers) z = z.cwiseMax(0.0);
        a = std::move(z);
    }
    return a.row(0).transpose();
}

double mlp_loss_and_grad(const MlpModel& model, const Eigen::MatrixXd& x,
                         const Eigen::VectorXd& y, MlpGradients& grads) {
    check_input(model, x);
    if (y.size() != x.cols()) throw std::invalid_argument("target count does not match batch");
    const auto b = static_cast<double>(x.cols());
    const std::size_t layers = model.weights.size();

    std::vector<Eigen::MatrixXd> activations(layers + 1);
    std::vector<Eigen::MatrixXd> pre(layers);
    activations[0] = x;
    for (std::size_t l = 0; l < layers; ++l) {
        pre[l] = (model.weights[l] * activations[l]).colwise() + model.biases[l];
        activations[l + 1] = l + 1 < layers ? pre[l].cwiseMax(0.0) : pre[l];
    }

    const Eigen::MatrixXd residual = activations[layers] - y.transpose();
    const double loss = residual.squaredNorm() / b;

    grads.weights.resize(layers);
    grads.biases.resize(layers);
    Eigen::MatrixXd delta = (2.0 / b) * residual;
    for (std::size_t l = layers; l-- > 0;) {
        grads.weights[l] = delta * activations[l].transpose();
        grads.biases[l] = delta.rowwise().sum();
        if (l > 0) {
            delta = (model.weights[l].transpose() * delta).array() *
                    (pre[l - 1].array() > 0.0).cast<double>();
        }
    }
    return loss;
}

void adam_step(MlpModel& model, const MlpGradients& grads, AdamState& state, const MlpSpec& spec) {
    if (state.t == 0) {
        state.m = zero_gradients(model);
        state.v = zero_gradients(model);
    }
    ++state.t;
    const double bc1 = 1.0 - std::pow(spec.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(spec.beta2, static_cast<double>(state.t));
    auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
        m = spec.beta1 * m + (1.0 - spec.beta1) * g;
        v = (spec.beta2 * v.array() + (1.0 - spec.beta2) * g.array().square()).matrix();
        p.array() -=
            spec.learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + spec.epsilon);
    };
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        update(model.weights[l], grads.weights[l], state.m.weights[l], state.v.weights[l]);
        update(model.biases[l], grads.biases[l], state.m.biases[l], state.v.biases[l]);
    }
}

MlpModel mlp_train(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                   const MlpSpec& spec) {
    spec.validate();
    if (inputs.cols() != targets.size()) throw std::invalid_argument("sample count mismatch");
    if (inputs.rows() != spec.layer_sizes.front()) {
        throw std::invalid_argument("input dimension does not match first layer width");
    }
    const Eigen::Index n = inputs.cols();
    const auto n_val = static_cast<Eigen::Index>(
        std::floor(spec.validation_fraction * static_cast<double>(n) + 1e-9));
    const Eigen::Index n_fit = n - n_val;
    if (n_fit < 1 || n_val < 1) throw std::invalid_argument("too few samples for train/validation split");

    const Eigen::MatrixXd x_fit = inputs.leftCols(n_fit);
    const Eigen::VectorXd y_fit = targets.head(n_fit);
    const Eigen::MatrixXd x_val = inputs.rightCols(n_val);
    const Eigen::VectorXd y_val = targets.tail(n_val);

    auto val_mse = [&](const MlpModel& m) {
        return (mlp_predict(m, x_val) - y_val).squaredNorm() / static_cast<double>(n_val);
    };

    MlpModel model = mlp_init(spec);
    MlpModel best = model;
    double best_val = val_mse(model);

    Rng shuffle_stream(mix64(spec.seed, 0x65706f6368ULL));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n_fit));
    for (Eigen::Index i = 0; i < n_fit; ++i) order[static_cast<std::size_t>(i)] = i;

    AdamState adam;
    MlpGradients grads;
    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(shuffle_stream.uniform01() * static_cast<double>(i));
            std::swap(order[i - 1], order[std::min(j, i - 1)]);
        }
        for (Eigen::Index start = 0; start < n_fit; start += spec.batch_size) {
            const Eigen::Index count = std::min<Eigen::Index>(spec.batch_size, n_fit - start);
            Eigen::MatrixXd xb(inputs.rows(), count);
            Eigen::VectorXd yb(count);
            for (Eigen::Index c = 0; c < count; ++c) {
                const Eigen::Index src = order[static_cast<std::size_t>(start + c)];
                xb.col(c) = x_fit.col(src);
                yb[c] = y_fit[src];
            }
            const double loss = mlp_loss_and_grad(model, xb, yb, grads);
            if (!std::isfinite(loss)) {
                throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                         std::to_string(epoch) + ", batch offset " +
                                         std::to_string(start));
            }
            adam_step(model, grads, adam, spec);
        }
        const double v = val_mse(model);
        if (v < best_val) {
            best_val = v;
            best = model;
        }
    }
    return best;
}

WindowSet delay_windows(const std::vector<double>& series, int window) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (series.size() < static_cast<std::size_t>(window) + 1) {
        throw std::invalid_argument("series shorter than window+1");
    }
    const auto n = static_cast<Eigen::Index>(series.size()) - window;
    WindowSet ws;
    ws.inputs.resize(window, n);
    ws.targets.resize(n);
    ws.target_index.resize(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) {
        for (int r = 0; r < window; ++r) {
            ws.inputs(r, c) = series[static_cast<std::size_t>(c + r)];
        }
        ws.targets[c] = series[static_cast<std::size_t>(c) + static_cast<std::size_t>(window)];
        ws.target_index[static_cast<std::size_t>(c)] = c + window;
    }
    return ws;
}

}  // namespace qrc
