#include "qrc/esn.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qrc {

void EsnSpec::validate() const {
    if (n_reservoir < 1) throw std::invalid_argument("n_reservoir must be >= 1");
    if (!(spectral_radius > 0.0)) throw std::invalid_argument("spectral_radius must be > 0");
    if (!(leak_rate > 0.0 && leak_rate <= 1.0)) throw std::invalid_argument("leak_rate must be in (0,1]");
    if (sparsity < 0.0 || sparsity > 1.0) throw std::invalid_argument("sparsity must be in [0,1]");
    if (washout < 0) throw std::invalid_argument("washout must be >= 0");
}

EsnSpec qiesn_spec() {
    EsnSpec spec;
    spec.sparsity = 0.1;
    spec.feature_map = FeatureMap::Sin;
    spec.seed = 42;
    return spec;
}

double spectral_radius(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

/// One seeded draw of the recurrent matrix: dense uniform [-1,1] entries,
/// then a fraction zeroed. Draw order is row-major weights, then row-major
/// mask, so results are reproducible across platforms.
Eigen::MatrixXd draw_recurrent(const EsnSpec& spec, Rng& stream) {
    const int n = spec.n_reservoir;
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w(i, j) = stream.uniform(-1.0, 1.0);
    }
    if (spec.sparsity > 0.0) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (stream.uniform01() < spec.sparsity) w(i, j) = 0.0;
            }
        }
    }
    return w;
}

}  // namespace

EsnState esn_init(const EsnSpec& spec, int input_dim) {
    spec.validate();
    if (input_dim < 1) throw std::invalid_argument("input_dim must be >= 1");

    Rng stream(spec.seed);
    Eigen::MatrixXd w = draw_recurrent(spec, stream);
    double radius = spectral_radius(w);
    if (radius == 0.0) {
        w = draw_recurrent(spec, stream);
        radius = spectral_radius(w);
        if (radius == 0.0) {
            throw std::runtime_error("recurrent draw degenerate (zero spectral radius) twice");
        }
    }
    w *= spec.spectral_radius / radius;

    EsnState state;
    state.spec = spec;
    state.w = std::move(w);
    state.w_in.resize(spec.n_reservoir, input_dim);
    for (int i = 0; i < spec.n_reservoir; ++i) {
        for (int j = 0; j < input_dim; ++j) {
            state.w_in(i, j) = stream.uniform(-spec.input_scale, spec.input_scale);
        }
    }
    state.x = Eigen::VectorXd::Zero(spec.n_reservoir);
    return state;
}

void esn_step(EsnState& state, const Eigen::VectorXd& u) {
    if (u.size() != state.w_in.cols()) throw std::invalid_argument("input dimension mismatch");
    Eigen::VectorXd mapped = u;
    if (state.spec.feature_map == FeatureMap::Sin) {
        mapped = mapped.array().sin().matrix();
    }
    const double a = state.spec.leak_rate;
    state.x = (1.0 - a) * state.x +
              a * (state.w_in * mapped + state.w * state.x).array().tanh().matrix();
}

void esn_step(EsnState& state, double u) {
    esn_step(state, Eigen::VectorXd::Constant(1, u));
}

FeatureMatrix esn_features(const std::vector<double>& series, const EsnSpec& spec) {
    spec.validate();
    if (series.size() < static_cast<std::size_t>(spec.washout) + 2) {
        throw std::invalid_argument("series shorter than washout+2");
    }
    EsnState state = esn_init(spec, 1);
    FeatureMatrix fm;
    fm.entries.resize(spec.n_reservoir, static_cast<Eigen::Index>(series.size()));
    fm.washout = spec.washout;
    for (std::size_t k = 0; k < series.size(); ++k) {
        esn_step(state, series[k]);
        fm.entries.col(static_cast<Eigen::Index>(k)) = state.x;
    }
    return fm;
}

}  // namespace qrc
