#pragma once

#include "dqs/circuit.hpp"
#include "dqs/pauli.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dqs {

using DenseUnitary = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Qubit 0 is the most significant bit of the basis index, so the printed
// bitstring reads left to right as qubits 0..N-1. The star+ancilla scratch
// qubit (index N) is the least significant bit.

inline constexpr std::size_t kDenseQubitCeiling = 11;

Eigen::Matrix2cd pauli_matrix(Pauli p);

// Dense Hermitian sum of coefficient-weighted Pauli strings.
Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian& h);

// exp(-i H t) via Hermitian eigendecomposition. Refuses width above the
// dense ceiling.
DenseUnitary exact_unitary(const Hamiltonian& h, double t);

// Ordered product of the gate matrices. For circuits with an ancilla the
// data-qubit block with the ancilla projected to |0> in and out is
// returned; a non-unitary block signals ancilla leakage and throws.
DenseUnitary circuit_unitary(const Circuit& c);

// Same product over the full register, no ancilla projection.
DenseUnitary circuit_unitary_full(const Circuit& c);

// |Tr(exact * approx^dag)| / dim.
double process_fidelity(const DenseUnitary& exact, const DenseUnitary& approx);

// Trapezoidal integral of fidelity samples (t, F(t)) over [0, t_end],
// divided by t_end. Samples must be sorted by t.
double normalized_fidelity(const std::vector<std::pair<double, double>>& samples, double t_end);

// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& m);

void apply_gate(StateVector& state, const Gate& g, int num_qubits);

// Runs the gate list on |0...0> over num_qubits.
StateVector run_gates(const std::vector<Gate>& gates, int num_qubits);

std::vector<double> born_probabilities(const StateVector& state);

struct NoiseConfig {
    double p = 0.0;          // two-qubit depolarizing probability per CNOT
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;  // shot i uses seed + i
};

struct ShotDistribution {
    std::vector<std::uint64_t> counts;  // indexed by the data-qubit bitstring value
    std::uint64_t shots = 0;

    std::vector<double> probabilities() const;
};

// Monte Carlo over shots: each shot evolves the initial data-qubit state
// through the circuit, and after every CNOT applies, with probability p, a
// uniformly random two-qubit Pauli to the control/target pair (the
// stochastic realization of pair depolarization to I/4). All data qubits
// are then measured in the computational basis.
ShotDistribution run_noisy(const Circuit& c, const StateVector& initial,
                           const NoiseConfig& noise);

struct HellingerResult {
    double distance = 0.0;    // (1/sqrt(2)) * || sqrt(P) - sqrt(Q) ||_2
    double infidelity = 0.0;  // 1 - (1 - distance^2)^2
};

// Both inputs must sum to 1 within 1e-9 and share the same outcome count.
HellingerResult hellinger(const std::vector<double>& p, const std::vector<double>& q);

// "bitstring,count,probability" rows.
std::string distribution_csv(const ShotDistribution& d, int num_qubits);

struct SimReport {
    std::string hamiltonian;
    std::string strategy;
    std::string generator;
    std::uint64_t seed = 0;
    double process_fidelity = 0.0;
    double normalized_fidelity = 0.0;
    std::size_t cnots_pre = 0;
    std::size_t cnots_post = 0;
    double hellinger_distance = 0.0;
    double hellinger_infidelity = 0.0;
};

}  // namespace dqs
