#pragma once

#include "dqs/ordering.hpp"
#include "dqs/pauli.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dqs {

enum class GateKind { H, S, Sdag, Rz, X, Cnot };

struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;           // target for single-qubit gates, control for CNOT
    int q1 = -1;          // CNOT target
    double angle = 0.0;   // Rz only, radians

    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate s(int q) { return {GateKind::S, q, -1, 0.0}; }
    static Gate sdag(int q) { return {GateKind::Sdag, q, -1, 0.0}; }
    static Gate rz(double angle, int q) { return {GateKind::Rz, q, -1, angle}; }
    static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
    static Gate cnot(int control, int target) { return {GateKind::Cnot, control, target, 0.0}; }

    bool touches(int q) const { return q == q0 || (kind == GateKind::Cnot && q == q1); }
    bool operator==(const Gate& other) const = default;
};

// How the CNOT entangler of each exp(-i theta P) sub-circuit is laid out.
//   Ladder:      CNOT chain down the support, Rz on the last non-I qubit.
//   Star:        every CNOT targets the last non-I qubit.
//   StarAncilla: every CNOT is controlled on a support qubit and targets a
//                shared scratch qubit appended after the data register.
enum class EntanglerArch { Ladder, Star, StarAncilla };

EntanglerArch parse_arch(const std::string& name);
std::string arch_name(EntanglerArch arch);

struct Circuit {
    int num_qubits = 0;   // data qubits plus the ancilla when present
    int num_data = 0;
    bool has_ancilla = false;
    int trotter_r = 1;
    double time = 0.0;
    std::vector<Gate> gates;

    int ancilla() const { return num_data; }
};

// Sub-circuit for exp(-i * coefficient * dt * P): basis changes (H for X,
// Sdag+H prefix / H+S suffix for Y) around the entangler and a central
// Rz(2 * coefficient * dt). Throws on identity terms.
std::vector<Gate> synthesize_term(const WeightedPauliTerm& term, double dt,
                                  EntanglerArch arch, std::size_t width);

// First-order product formula: per-term sub-circuits in plan order with
// dt = t / r, the whole sequence repeated r times.
Circuit assemble(const OrderingPlan& plan, const Hamiltonian& h, double t, int r,
                 EntanglerArch arch);

// Fixed-point rewrite: adjacent H/H and S/Sdag pairs on a wire vanish, and
// identical CNOT pairs vanish when every intervening gate on their two
// wires commutes with the CNOT (diagonal gates on the control, X on the
// target, CNOTs sharing the control or the target; H always blocks).
// The unitary is preserved exactly; the pass is idempotent.
Circuit cancel_gates(const Circuit& c);

std::size_t cnot_count(const Circuit& c);

// Text form, one gate per line after width/r/t header lines; Rz angles are
// printed with 10 significant digits. This is the golden-file format.
void write_circuit(const Circuit& c, std::ostream& out);
std::string circuit_to_string(const Circuit& c);
Circuit read_circuit(std::istream& in);

}  // namespace dqs
