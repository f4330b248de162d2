#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qrc/feature.hpp"
#include "qrc/random.hpp"

namespace qrc {

/// Which Hamiltonian parameter carries the input sample as an affine shift.
enum class Encoding { Detuning, Rabi, Both };

/// Per-qubit readout observable.
enum class Observable { Inversion, ExcitedPopulation };

/// Dissipation channel. RaisingLiteral pumps toward the excited state,
/// Lowering relaxes toward the ground state.
enum class Collapse { RaisingLiteral, Lowering };

/// Full configuration of the quantum reservoir.
///
/// Conventions fixed here and relied on everywhere: basis |q1 ... qN> with
/// qubit 1 most significant, sigma_z = diag(1, -1), and the excited-state
/// projector sigma_d = 0.5 (1 - sigma_z) = diag(0, 1).
struct ReservoirSpec {
    int n_qubits = 5;
    double delta0 = 8.0;       // detuning center
    double omega0 = 6.0;       // Rabi frequency center
    double v0 = 1.0;           // qubit-qubit coupling center
    double r_scale = 1.0;      // input scaling applied to the encoded parameter
    double spread = 0.1;       // half-width of uniform draws, relative to center
    double gamma = 1e-8;       // per-qubit dissipation rate
    double t_evolve = 3.14159265358979323846;  // evolution window
    int n_steps = 3000;        // fixed integrator steps over [0, t_evolve]
    Encoding encoding = Encoding::Detuning;
    Observable observable = Observable::Inversion;
    Collapse collapse = Collapse::RaisingLiteral;
    std::uint64_t seed = 0;

    int dim() const { return 1 << n_qubits; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Stable content hash over all fields (including the seed); ties a
    /// trained readout to the parameter draw that produced its features.
    std::uint64_t hash() const;
};

/// One random draw of the reservoir's Hamiltonian parameters.
struct QubitParams {
    std::vector<double> delta;  // per-qubit detunings
    std::vector<double> omega;  // per-qubit Rabi frequencies
    Eigen::MatrixXd coupling;   // symmetric, zero diagonal
};

using DensityMatrix = Eigen::MatrixXcd;

/// Per-qubit pure-state amplitudes a_n and phases phi_n defining
/// |psi_n> = a_n |0> + sqrt(1 - a_n^2) e^{-i phi_n} |1>.
struct InitialState {
    std::vector<double> amplitudes;
    std::vector<double> phases;
};

/// Draws per-qubit detunings, Rabi frequencies and couplings uniformly in
/// center * [1 - spread, 1 + spread]. Draw order is fixed: all detunings,
/// then all Rabi frequencies, then couplings over the row-major upper
/// triangle (mirrored to keep the matrix symmetric).
QubitParams sample_qubit_params(const ReservoirSpec& spec, Rng& stream);

/// H(u) = sum_n [-Delta_n(u) sigma_d + (Omega_n(u)/2) sigma_x]
///      + sum_{m>n} V_mn sigma_d(m) sigma_d(n) / (N - 1),
/// with the input folded into the encoded parameter(s) as center + r * u.
/// The coupling term is absent for a single qubit.
Eigen::MatrixXcd build_hamiltonian(const QubitParams& params, double u, const ReservoirSpec& spec);

/// rho_0 = |psi_0><psi_0| for the all-ground product state.
DensityMatrix prepare_initial_state(const ReservoirSpec& spec);

/// rho_0 for an explicit product state.
DensityMatrix prepare_initial_state(const ReservoirSpec& spec, const InitialState& init);

/// Seeded random product state: a_n uniform in [0,1], phi_n in [0, 2pi).
InitialState sample_initial_state(const ReservoirSpec& spec, Rng& stream);

/// -i [H, rho] + sum_n (C_n rho C_n^dag - 0.5 {C_n^dag C_n, rho}) with
/// C_n = sqrt(gamma) sigma_n^+ or sigma_n^- per spec.collapse. Valid for
/// arbitrary rho (tests rely on trace(rhs) = 0 for any input).
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& hamiltonian, const DensityMatrix& rho,
                              const ReservoirSpec& spec);

/// Evolves rho_0 over [0, t_evolve]. Dispatches to the exact eigenbasis
/// propagator when gamma == 0 and to fixed-step RK4 otherwise. The result is
/// re-Hermitized; a trace drift above 1e-4 is reported as a runtime error.
DensityMatrix evolve(const DensityMatrix& rho0, const Eigen::MatrixXcd& hamiltonian,
                     const ReservoirSpec& spec);

/// Fixed-step RK4 integration of the master equation (any gamma).
DensityMatrix evolve_rk4(const DensityMatrix& rho0, const Eigen::MatrixXcd& hamiltonian,
                         const ReservoirSpec& spec);

/// Exact unitary propagation e^{-iHT} rho_0 e^{iHT}; requires gamma == 0.
DensityMatrix evolve_eigen(const DensityMatrix& rho0, const Eigen::MatrixXcd& hamiltonian,
                           const ReservoirSpec& spec);

/// w_n = trace(rho O_n) for each qubit, O_n = sigma_z or sigma_d per
/// spec.observable. An imaginary part above 1e-6 signals a corrupted state.
std::vector<double> measure_readout(const DensityMatrix& rho, const ReservoirSpec& spec);

/// Readout features for every sample of a series under the restart protocol:
/// each column evolves the same rho_0 under H(u(t_k)) independently, so
/// columns may be computed in parallel without changing the result.
FeatureMatrix compute_features_with(const QubitParams& params, const std::vector<double>& series,
                                    const ReservoirSpec& spec, int threads = 1);

/// Same, sampling one QubitParams draw from spec.seed first.
FeatureMatrix compute_features(const std::vector<double>& series, const ReservoirSpec& spec,
                               int threads = 1);

// Diagnostics used by tests and the integrator's divergence check.
double hermiticity_error(const Eigen::MatrixXcd& m);
double trace_error(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);

/// Row-major "re,im" dump for cross-implementation comparison.
void dump_matrix(std::ostream& os, const Eigen::MatrixXcd& m);

}  // namespace qrc
