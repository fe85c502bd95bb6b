#include "dqs/sim.hpp"

#include "dqs/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dqs {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

std::size_t dim_of(int num_qubits) {
    return std::size_t{1} << num_qubits;
}

void check_width(std::size_t width) {
    if (width > kDenseQubitCeiling) {
        throw std::runtime_error("dense simulation refuses " + std::to_string(width) +
                                 " qubits (ceiling " + std::to_string(kDenseQubitCeiling) + ")");
    }
}

// Bit of qubit q inside a basis index (qubit 0 = most significant).
std::size_t qubit_mask(int q, int num_qubits) {
    return std::size_t{1} << (num_qubits - 1 - q);
}

void ensure_unitary(const Eigen::MatrixXcd& u, double tol, const char* what) {
    const Eigen::Index n = u.rows();
    if (n <= 512) {
        const double err =
            (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
        if (err > tol) {
            throw std::runtime_error(std::string(what) + ": not unitary (error " +
                                     std::to_string(err) + ")");
        }
        return;
    }
    // Large blocks: spot-check column norms and a few inner products.
    std::mt19937_64 rng(0x5eedu);
    for (int s = 0; s < 64; ++s) {
        const auto i = static_cast<Eigen::Index>(bounded_uint(rng, n));
        const auto j = static_cast<Eigen::Index>(bounded_uint(rng, n));
        const Complex dot = u.col(i).dot(u.col(j));
        const double want = i == j ? 1.0 : 0.0;
        if (std::abs(dot - want) > tol * 32) {
            throw std::runtime_error(std::string(what) + ": not unitary");
        }
    }
}

}  // namespace

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -kI, kI, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian& h) {
    check_width(h.width);
    const std::size_t dim = dim_of(static_cast<int>(h.width));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    // Each Pauli string is a signed permutation: column b maps to row
    // b ^ flip with a per-qubit phase.
    for (const auto& term : h.terms) {
        std::size_t flip = 0;
        for (std::size_t q = 0; q < h.width; ++q) {
            const Pauli p = term.string.at(q);
            if (p == Pauli::X || p == Pauli::Y) {
                flip |= qubit_mask(static_cast<int>(q), static_cast<int>(h.width));
            }
        }
        for (std::size_t col = 0; col < dim; ++col) {
            Complex phase = term.coefficient;
            for (std::size_t q = 0; q < h.width; ++q) {
                const bool bit = col & qubit_mask(static_cast<int>(q), static_cast<int>(h.width));
                switch (term.string.at(q)) {
                    case Pauli::Y: phase *= bit ? -kI : kI; break;
                    case Pauli::Z: phase *= bit ? -1.0 : 1.0; break;
                    default: break;
                }
            }
            m(col ^ flip, col) += phase;
        }
    }
    return m;
}

DenseUnitary exact_unitary(const Hamiltonian& h, double t) {
    const Eigen::MatrixXcd hm = hamiltonian_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hm);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("exact_unitary: eigendecomposition failed");
    }
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    Eigen::VectorXcd phases(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        phases(i) = std::exp(-kI * values(i) * t);
    }
    return vectors * phases.asDiagonal() * vectors.adjoint();
}

namespace {

// Left-multiplies the accumulated matrix by the gate, editing row pairs in
// place. Kept separate from the statevector kernel so the two can
// cross-check each other.
void apply_gate_to_matrix(Eigen::MatrixXcd& u, const Gate& g, int num_qubits) {
    const std::size_t dim = static_cast<std::size_t>(u.rows());
    if (g.kind == GateKind::Cnot) {
        const std::size_t cmask = qubit_mask(g.q0, num_qubits);
        const std::size_t tmask = qubit_mask(g.q1, num_qubits);
        for (std::size_t row = 0; row < dim; ++row) {
            if ((row & cmask) && !(row & tmask)) {
                u.row(row).swap(u.row(row | tmask));
            }
        }
        return;
    }
    Complex a, b, c, d;  // [[a, b], [c, d]] on the target qubit
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            a = s; b = s; c = s; d = -s;
            break;
        }
        case GateKind::S: a = 1; b = 0; c = 0; d = kI; break;
        case GateKind::Sdag: a = 1; b = 0; c = 0; d = -kI; break;
        case GateKind::X: a = 0; b = 1; c = 1; d = 0; break;
        case GateKind::Rz:
            a = std::exp(-kI * g.angle * 0.5);
            b = 0; c = 0;
            d = std::exp(kI * g.angle * 0.5);
            break;
        default: throw std::runtime_error("apply_gate_to_matrix: bad gate");
    }
    const std::size_t mask = qubit_mask(g.q0, num_qubits);
    for (std::size_t r0 = 0; r0 < dim; ++r0) {
        if (r0 & mask) continue;
        const std::size_t r1 = r0 | mask;
        for (std::size_t col = 0; col < dim; ++col) {
            const Complex x = u(r0, col);
            const Complex y = u(r1, col);
            u(r0, col) = a * x + b * y;
            u(r1, col) = c * x + d * y;
        }
    }
}

}  // namespace

DenseUnitary circuit_unitary_full(const Circuit& c) {
    check_width(static_cast<std::size_t>(c.num_qubits));
    const std::size_t dim = dim_of(c.num_qubits);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Gate& g : c.gates) {
        apply_gate_to_matrix(u, g, c.num_qubits);
    }
    return u;
}

DenseUnitary circuit_unitary(const Circuit& c) {
    if (!c.has_ancilla) {
        DenseUnitary u = circuit_unitary_full(c);
        ensure_unitary(u, 1e-9, "circuit_unitary");
        return u;
    }
    const DenseUnitary full = circuit_unitary_full(c);
    // Ancilla is the least significant bit; take the <anc=0|...|anc=0> block.
    const std::size_t dim = dim_of(c.num_data);
    DenseUnitary block(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            block(i, j) = full(2 * i, 2 * j);
        }
    }
    ensure_unitary(block, 1e-9, "circuit_unitary (ancilla block)");
    return block;
}

double process_fidelity(const DenseUnitary& exact, const DenseUnitary& approx) {
    if (exact.rows() != approx.rows() || exact.cols() != approx.cols()) {
        throw std::runtime_error("process_fidelity: dimension mismatch");
    }
    const Complex tr = (exact * approx.adjoint()).trace();
    return std::abs(tr) / static_cast<double>(exact.rows());
}

double normalized_fidelity(const std::vector<std::pair<double, double>>& samples,
                           double t_end) {
    if (samples.empty()) {
        throw std::runtime_error("normalized_fidelity: no samples");
    }
    if (t_end > samples.back().first + 1e-12) {
        throw std::runtime_error("normalized_fidelity: t_end beyond the sampled range");
    }
    if (t_end <= samples.front().first) {
        return samples.front().second;
    }
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto [t0, f0] = samples[i];
        auto [t1, f1] = samples[i + 1];
        if (t1 < t0) throw std::runtime_error("normalized_fidelity: samples not sorted");
        if (t0 >= t_end) break;
        if (t1 > t_end) {  // clip the final segment
            f1 = f0 + (f1 - f0) * (t_end - t0) / (t1 - t0);
            t1 = t_end;
        }
        integral += 0.5 * (f0 + f1) * (t1 - t0);
    }
    return integral / t_end;
}

double operator_norm(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

void apply_gate(StateVector& state, const Gate& g, int num_qubits) {
    const std::size_t dim = static_cast<std::size_t>(state.size());
    if (g.kind == GateKind::Cnot) {
        const std::size_t cmask = qubit_mask(g.q0, num_qubits);
        const std::size_t tmask = qubit_mask(g.q1, num_qubits);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cmask) && !(i & tmask)) {
                std::swap(state(i), state(i | tmask));
            }
        }
        return;
    }
    const std::size_t mask = qubit_mask(g.q0, num_qubits);
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & mask) continue;
                const Complex x = state(i);
                const Complex y = state(i | mask);
                state(i) = s * (x + y);
                state(i | mask) = s * (x - y);
            }
            break;
        }
        case GateKind::S:
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & mask) state(i) *= kI;
            }
            break;
        case GateKind::Sdag:
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & mask) state(i) *= -kI;
            }
            break;
        case GateKind::X:
            for (std::size_t i = 0; i < dim; ++i) {
                if (!(i & mask)) std::swap(state(i), state(i | mask));
            }
            break;
        case GateKind::Rz: {
            const Complex lo = std::exp(-kI * g.angle * 0.5);
            const Complex hi = std::exp(kI * g.angle * 0.5);
            for (std::size_t i = 0; i < dim; ++i) {
                state(i) *= (i & mask) ? hi : lo;
            }
            break;
        }
        default: throw std::runtime_error("apply_gate: bad gate");
    }
}

StateVector run_gates(const std::vector<Gate>& gates, int num_qubits) {
    check_width(static_cast<std::size_t>(num_qubits));
    StateVector state = StateVector::Zero(dim_of(num_qubits));
    state(0) = 1.0;
    for (const Gate& g : gates) {
        apply_gate(state, g, num_qubits);
    }
    return state;
}

std::vector<double> born_probabilities(const StateVector& state) {
    std::vector<double> probs(static_cast<std::size_t>(state.size()));
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::norm(state(i));
    }
    return probs;
}

std::vector<double> ShotDistribution::probabilities() const {
    std::vector<double> probs(counts.size(), 0.0);
    if (shots == 0) return probs;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        probs[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
    return probs;
}

namespace {

void apply_pauli_index(StateVector& state, int pauli, int qubit, int num_qubits) {
    const std::size_t dim = static_cast<std::size_t>(state.size());
    const std::size_t mask = qubit_mask(qubit, num_qubits);
    switch (pauli) {
        case 0: break;  // I
        case 1:         // X
            for (std::size_t i = 0; i < dim; ++i) {
                if (!(i & mask)) std::swap(state(i), state(i | mask));
            }
            break;
        case 2:  // Y
            for (std::size_t i = 0; i < dim; ++i) {
                if (!(i & mask)) {
                    const Complex lo = state(i);
                    state(i) = -kI * state(i | mask);
                    state(i | mask) = kI * lo;
                }
            }
            break;
        case 3:  // Z
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & mask) state(i) = -state(i);
            }
            break;
    }
}

}  // namespace

ShotDistribution run_noisy(const Circuit& c, const StateVector& initial,
                           const NoiseConfig& noise) {
    if (noise.p < 0.0 || noise.p > 1.0) {
        throw std::runtime_error("run_noisy: p must lie in [0, 1]");
    }
    check_width(static_cast<std::size_t>(c.num_qubits));
    const std::size_t data_dim = dim_of(c.num_data);
    if (static_cast<std::size_t>(initial.size()) != data_dim) {
        throw std::runtime_error("run_noisy: initial state has the wrong dimension");
    }

    // Embed the data state with the ancilla (least significant bit) in |0>.
    StateVector start = StateVector::Zero(dim_of(c.num_qubits));
    if (c.has_ancilla) {
        for (std::size_t i = 0; i < data_dim; ++i) start(2 * i) = initial(i);
    } else {
        start = initial;
    }

    ShotDistribution dist;
    dist.counts.assign(data_dim, 0);
    dist.shots = noise.shots;

    for (std::uint64_t shot = 0; shot < noise.shots; ++shot) {
        std::mt19937_64 rng(noise.seed + shot);
        StateVector state = start;
        for (const Gate& g : c.gates) {
            apply_gate(state, g, c.num_qubits);
            if (g.kind == GateKind::Cnot && noise.p > 0.0 &&
                canonical_double(rng) < noise.p) {
                const auto pick = bounded_uint(rng, 16);
                apply_pauli_index(state, static_cast<int>(pick >> 2), g.q0, c.num_qubits);
                apply_pauli_index(state, static_cast<int>(pick & 3), g.q1, c.num_qubits);
            }
        }
        // Sample one measurement of the full register, then drop the ancilla bit.
        const double u = canonical_double(rng);
        double acc = 0.0;
        std::size_t outcome = static_cast<std::size_t>(state.size()) - 1;
        for (Eigen::Index i = 0; i < state.size(); ++i) {
            acc += std::norm(state(i));
            if (u < acc) {
                outcome = static_cast<std::size_t>(i);
                break;
            }
        }
        if (c.has_ancilla) outcome >>= 1;
        ++dist.counts[outcome];
    }
    return dist;
}

HellingerResult hellinger(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::runtime_error("hellinger: outcome sets differ");
    }
    double sum_p = 0.0, sum_q = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum_p += p[i];
        sum_q += q[i];
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        sq += d * d;
    }
    if (std::abs(sum_p - 1.0) > 1e-9 || std::abs(sum_q - 1.0) > 1e-9) {
        throw std::runtime_error("hellinger: distributions must sum to 1");
    }
    HellingerResult r;
    r.distance = std::sqrt(0.5 * sq);
    const double h2 = r.distance * r.distance;
    r.infidelity = 1.0 - (1.0 - h2) * (1.0 - h2);
    return r;
}

std::string distribution_csv(const ShotDistribution& d, int num_qubits) {
    std::ostringstream out;
    out << "bitstring,count,probability\n";
    const auto probs = d.probabilities();
    char buf[32];
    for (std::size_t i = 0; i < d.counts.size(); ++i) {
        std::string bits(num_qubits, '0');
        for (int q = 0; q < num_qubits; ++q) {
            if (i & qubit_mask(q, num_qubits)) bits[q] = '1';
        }
        std::snprintf(buf, sizeof(buf), "%.10g", probs[i]);
        out << bits << ',' << d.counts[i] << ',' << buf << '\n';
    }
    return out.str();
}

}  // namespace dqs
