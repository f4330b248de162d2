#include "qrc/reservoir.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qrc/parallel.hpp"

namespace qrc {

namespace {

using Complex = std::complex<double>;
constexpr Complex kImagNeg{0.0, -1.0};

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) { return mix64(h ^ mix64(v)); }

std::uint64_t hash_double(double x) { return std::bit_cast<std::uint64_t>(x); }

/// Diagonal of sum_n C_n^dag C_n. RaisingLiteral contributes gamma on basis
/// states where qubit n is in the ground state, Lowering where it is excited.
Eigen::VectorXcd dissipation_diagonal(const ReservoirSpec& spec) {
    const int dim = spec.dim();
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(dim);
    for (int n = 0; n < spec.n_qubits; ++n) {
        const int mask = 1 << (spec.n_qubits - 1 - n);
        const bool on_excited = spec.collapse == Collapse::Lowering;
        for (int i = 0; i < dim; ++i) {
            if (((i & mask) != 0) == on_excited) d[i] += spec.gamma;
        }
    }
    return d;
}

/// out += sum_n C_n rho C_n^dag, added block-wise: for qubit n with bit
/// stride m, the jump copies the (source-bit, source-bit) submatrix of rho
/// onto the (target-bit, target-bit) submatrix of out scaled by gamma.
void add_jump_term(Eigen::MatrixXcd& out, const Eigen::MatrixXcd& rho, const ReservoirSpec& spec) {
    const int dim = spec.dim();
    const bool raising = spec.collapse == Collapse::RaisingLiteral;
    for (int n = 0; n < spec.n_qubits; ++n) {
        const int m = 1 << (spec.n_qubits - 1 - n);
        const int src = raising ? 0 : m;  // source bit value block offset
        const int dst = raising ? m : 0;
        for (int cb = 0; cb < dim; cb += 2 * m) {
            for (int rb = 0; rb < dim; rb += 2 * m) {
                out.block(rb + dst, cb + dst, m, m).noalias() +=
                    spec.gamma * rho.block(rb + src, cb + src, m, m);
            }
        }
    }
}

/// Master-equation right-hand side for Hermitian rho. Uses
/// [H, rho] = H rho - (H rho)^dag, one matrix product per evaluation.
void lindblad_rhs_hermitian(Eigen::MatrixXcd& out, Eigen::MatrixXcd& hrho,
                            const Eigen::MatrixXcd& hamiltonian, const Eigen::MatrixXcd& rho,
                            const Eigen::VectorXcd& half_diag, const ReservoirSpec& spec) {
    hrho.noalias() = hamiltonian * rho;
    out = kImagNeg * (hrho - hrho.adjoint());
    if (spec.gamma > 0.0) {
        add_jump_term(out, rho, spec);
        out.noalias() -= half_diag.asDiagonal() * rho;
        out.noalias() -= rho * half_diag.asDiagonal();
    }
}

void check_square(const Eigen::MatrixXcd& m, int dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument(std::string(what) + " dimension mismatch: expected " +
                                    std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

void ReservoirSpec::validate() const {
    require(n_qubits >= 1 && n_qubits <= 6, "n_qubits must be in [1,6]");
    require(n_steps >= 1, "n_steps must be >= 1");
    require(std::isfinite(t_evolve) && t_evolve > 0.0, "t_evolve must be > 0");
    require(spread >= 0.0 && spread < 1.0, "spread must be in [0,1)");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
    require(std::isfinite(delta0) && std::isfinite(omega0) && std::isfinite(v0) &&
                std::isfinite(r_scale),
            "reservoir parameters must be finite");
}

std::uint64_t ReservoirSpec::hash() const {
    std::uint64_t h = 0x71c9a3b28d5f0e47ULL;
    h = hash_combine(h, static_cast<std::uint64_t>(n_qubits));
    h = hash_combine(h, hash_double(delta0));
    h = hash_combine(h, hash_double(omega0));
    h = hash_combine(h, hash_double(v0));
    h = hash_combine(h, hash_double(r_scale));
    h = hash_combine(h, hash_double(spread));
    h = hash_combine(h, hash_double(gamma));
    h = hash_combine(h, hash_double(t_evolve));
    h = hash_combine(h, static_cast<std::uint64_t>(n_steps));
    h = hash_combine(h, static_cast<std::uint64_t>(encoding));
    h = hash_combine(h, static_cast<std::uint64_t>(observable));
    h = hash_combine(h, static_cast<std::uint64_t>(collapse));
    h = hash_combine(h, seed);
    return h;
}

QubitParams sample_qubit_params(const ReservoirSpec& spec, Rng& stream) {
    spec.validate();
    const int n = spec.n_qubits;
    QubitParams params;
    params.delta.resize(n);
    params.omega.resize(n);
    params.coupling = Eigen::MatrixXd::Zero(n, n);
    auto draw = [&](double center) {
        return stream.uniform(center * (1.0 - spec.spread), center * (1.0 + spec.spread));
    };
    for (int i = 0; i < n; ++i) params.delta[i] = draw(spec.delta0);
    for (int i = 0; i < n; ++i) params.omega[i] = draw(spec.omega0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = draw(spec.v0);
            params.coupling(i, j) = v;
            params.coupling(j, i) = v;
        }
    }
    return params;
}

Eigen::MatrixXcd build_hamiltonian(const QubitParams& params, double u, const ReservoirSpec& spec) {
    spec.validate();
    require(std::isfinite(u), "input sample must be finite");
    const int n = spec.n_qubits;
    require(static_cast<int>(params.delta.size()) == n &&
                static_cast<int>(params.omega.size()) == n && params.coupling.rows() == n &&
                params.coupling.cols() == n,
            "qubit parameter lengths must match n_qubits");

    const double shift = spec.r_scale * u;
    const bool encode_delta = spec.encoding != Encoding::Rabi;
    const bool encode_omega = spec.encoding != Encoding::Detuning;

    const int dim = spec.dim();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        const int mask = 1 << (n - 1 - q);
        const double delta = params.delta[q] + (encode_delta ? shift : 0.0);
        const double omega = params.omega[q] + (encode_omega ? shift : 0.0);
        for (int i = 0; i < dim; ++i) {
            if (i & mask) h(i, i) -= delta;        // -Delta sigma_d
            h(i, i ^ mask) += 0.5 * omega;         // (Omega/2) sigma_x
        }
    }
    if (n > 1) {
        const double norm = 1.0 / (n - 1);
        for (int a = 0; a < n; ++a) {
            const int mask_a = 1 << (n - 1 - a);
            for (int b = a + 1; b < n; ++b) {
                const int mask_b = 1 << (n - 1 - b);
                const double v = params.coupling(a, b) * norm;
                for (int i = 0; i < dim; ++i) {
                    if ((i & mask_a) && (i & mask_b)) h(i, i) += v;
                }
            }
        }
    }
    return h;
}

DensityMatrix prepare_initial_state(const ReservoirSpec& spec) {
    InitialState ground;
    ground.amplitudes.assign(static_cast<std::size_t>(spec.n_qubits), 1.0);
    ground.phases.assign(static_cast<std::size_t>(spec.n_qubits), 0.0);
    return prepare_initial_state(spec, ground);
}

DensityMatrix prepare_initial_state(const ReservoirSpec& spec, const InitialState& init) {
    spec.validate();
    const int n = spec.n_qubits;
    require(static_cast<int>(init.amplitudes.size()) == n &&
                static_cast<int>(init.phases.size()) == n,
            "initial state must define one amplitude and phase per qubit");

    Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
    for (int q = 0; q < n; ++q) {
        const double a = init.amplitudes[q];
        require(a >= 0.0 && a <= 1.0, "amplitudes must be in [0,1]");
        const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
        const Complex excited = b * std::exp(Complex(0.0, -init.phases[q]));
        Eigen::VectorXcd next(psi.size() * 2);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            next[2 * i] = psi[i] * a;
            next[2 * i + 1] = psi[i] * excited;
        }
        psi.swap(next);
    }
    return psi * psi.adjoint();
}

InitialState sample_initial_state(const ReservoirSpec& spec, Rng& stream) {
    spec.validate();
    InitialState init;
    init.amplitudes.resize(static_cast<std::size_t>(spec.n_qubits));
    init.phases.resize(static_cast<std::size_t>(spec.n_qubits));
    for (auto& a : init.amplitudes) a = stream.uniform01();
    for (auto& p : init.phases) p = stream.uniform(0.0, 6.283185307179586476925286766559);
    return init;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& hamiltonian, const DensityMatrix& rho,
                              const ReservoirSpec& spec) {
    spec.validate();
    const int dim = spec.dim();
    check_square(hamiltonian, dim, "hamiltonian");
    check_square(rho, dim, "density matrix");

    Eigen::MatrixXcd rhs = kImagNeg * (hamiltonian * rho - rho * hamiltonian);
    if (spec.gamma > 0.0) {
        add_jump_term(rhs, rho, spec);
        const Eigen::VectorXcd half = 0.5 * dissipation_diagonal(spec);
        rhs.noalias() -= half.asDiagonal() * rho;
        rhs.noalias() -= rho * half.asDiagonal();
    }
    return rhs;
}

DensityMatrix evolve_rk4(const DensityMatrix& rho0, const Eigen::MatrixXcd& hamiltonian,
                         const ReservoirSpec& spec) {
    spec.validate();
    const int dim = spec.dim();
    check_square(hamiltonian, dim, "hamiltonian");
    check_square(rho0, dim, "density matrix");

    const double dt = spec.t_evolve / spec.n_steps;
    const Eigen::VectorXcd half_diag = 0.5 * dissipation_diagonal(spec);
    const Complex trace_in = rho0.trace();

    Eigen::MatrixXcd rho = rho0;
    Eigen::MatrixXcd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
    Eigen::MatrixXcd stage(dim, dim), hrho(dim, dim);
    for (int s = 0; s < spec.n_steps; ++s) {
        lindblad_rhs_hermitian(k1, hrho, hamiltonian, rho, half_diag, spec);
        stage = rho + (0.5 * dt) * k1;
        lindblad_rhs_hermitian(k2, hrho, hamiltonian, stage, half_diag, spec);
        stage = rho + (0.5 * dt) * k2;
        lindblad_rhs_hermitian(k3, hrho, hamiltonian, stage, half_diag, spec);
        stage = rho + dt * k3;
        lindblad_rhs_hermitian(k4, hrho, hamiltonian, stage, half_diag, spec);
        rho += (dt / 6.0) * k1 + (dt / 3.0) * k2 + (dt / 3.0) * k3 + (dt / 6.0) * k4;
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double drift = std::abs(rho.trace() - trace_in);
    if (drift > 1e-4) {
        throw std::runtime_error("integrator divergence: trace drifted by " +
                                 std::to_string(drift) + " over " + std::to_string(spec.n_steps) +
                                 " steps");
    }
    return rho;
}

DensityMatrix evolve_eigen(const DensityMatrix& rho0, const Eigen::MatrixXcd& hamiltonian,
                           const ReservoirSpec& spec) {
    spec.validate();
    require(spec.gamma == 0.0, "exact propagator requires gamma == 0");
    const int dim = spec.dim();
    check_square(hamiltonian, dim, "hamiltonian");
    check_square(rho0, dim, "density matrix");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
    if (es.info() != Eigen::Success) throw std::runtime_error("hamiltonian eigendecomposition failed");
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i) {
        phases[i] = std::exp(Complex(0.0, -es.eigenvalues()[i] * spec.t_evolve));
    }
    const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::MatrixXcd rho = u * rho0 * u.adjoint();
    return 0.5 * (rho + rho.adjoint());
}

DensityMatrix evolve(const DensityMatrix& rho0, const Eigen::MatrixXcd& hamiltonian,
                     const ReservoirSpec& spec) {
    if (spec.gamma == 0.0) return evolve_eigen(rho0, hamiltonian, spec);
    return evolve_rk4(rho0, hamiltonian, spec);
}

std::vector<double> measure_readout(const DensityMatrix& rho, const ReservoirSpec& spec) {
    spec.validate();
    const int dim = spec.dim();
    check_square(rho, dim, "density matrix");

    std::vector<double> readout(static_cast<std::size_t>(spec.n_qubits));
    for (int q = 0; q < spec.n_qubits; ++q) {
        const int mask = 1 << (spec.n_qubits - 1 - q);
        Complex w{0.0, 0.0};
        for (int i = 0; i < dim; ++i) {
            const bool excited = (i & mask) != 0;
            if (spec.observable == Observable::Inversion) {
                w += excited ? -rho(i, i) : rho(i, i);
            } else if (excited) {
                w += rho(i, i);
            }
        }
        if (std::abs(w.imag()) > 1e-6) {
            throw std::runtime_error("corrupted state: readout expectation has imaginary part " +
                                     std::to_string(w.imag()));
        }
        readout[static_cast<std::size_t>(q)] = w.real();
    }
    return readout;
}

FeatureMatrix compute_features_with(const QubitParams& params, const std::vector<double>& series,
                                    const ReservoirSpec& spec, int threads) {
    spec.validate();
    const auto k_total = series.size();
    FeatureMatrix fm;
    fm.entries.resize(spec.n_qubits, static_cast<Eigen::Index>(k_total));
    fm.spec_hash = spec.hash();
    if (k_total == 0) return fm;

    const DensityMatrix rho0 = prepare_initial_state(spec);
    std::vector<std::string> errors(k_total);
    std::vector<char> failed(k_total, 0);

    parallel_for(k_total, threads, [&](std::size_t k) {
        try {
            const Eigen::MatrixXcd h = build_hamiltonian(params, series[k], spec);
            const DensityMatrix rho = evolve(rho0, h, spec);
            const std::vector<double> w = measure_readout(rho, spec);
            for (int q = 0; q < spec.n_qubits; ++q) {
                fm.entries(q, static_cast<Eigen::Index>(k)) = w[static_cast<std::size_t>(q)];
            }
        } catch (const std::exception& e) {
            errors[k] = e.what();
            failed[k] = 1;
        }
    });

    for (std::size_t k = 0; k < k_total; ++k) {
        if (failed[k]) {
            throw std::runtime_error("feature column " + std::to_string(k) + ": " + errors[k]);
        }
    }
    return fm;
}

FeatureMatrix compute_features(const std::vector<double>& series, const ReservoirSpec& spec,
                               int threads) {
    Rng stream(spec.seed);
    const QubitParams params = sample_qubit_params(spec, stream);
    return compute_features_with(params, series, spec, threads);
}

double hermiticity_error(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double trace_error(const DensityMatrix& rho) { return std::abs(rho.trace() - Complex(1.0, 0.0)); }

double min_eigenvalue(const DensityMatrix& rho) {
    const Eigen::MatrixXcd sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void dump_matrix(std::ostream& os, const Eigen::MatrixXcd& m) {
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
            os << buf << (j + 1 == m.cols() ? "" : " ");
        }
        os << '\n';
    }
}

}  // namespace qrc
