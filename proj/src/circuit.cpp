#include "dqs/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <list>
#include <sstream>
#include <stdexcept>

namespace dqs {

EntanglerArch parse_arch(const std::string& name) {
    if (name == "ladder") return EntanglerArch::Ladder;
    if (name == "star") return EntanglerArch::Star;
    if (name == "star_ancilla") return EntanglerArch::StarAncilla;
    throw std::runtime_error("unknown architecture '" + name + "'");
}

std::string arch_name(EntanglerArch arch) {
    switch (arch) {
        case EntanglerArch::Ladder: return "ladder";
        case EntanglerArch::Star: return "star";
        case EntanglerArch::StarAncilla: return "star_ancilla";
    }
    throw std::runtime_error("invalid architecture");
}

std::vector<Gate> synthesize_term(const WeightedPauliTerm& term, double dt,
                                  EntanglerArch arch, std::size_t width) {
    if (term.string.is_identity()) {
        throw std::runtime_error("synthesize_term: identity term");
    }
    if (term.string.size() != width) {
        throw std::runtime_error("synthesize_term: term width does not match register");
    }
    const auto support = term.string.support();
    const double angle = 2.0 * term.coefficient * dt;

    std::vector<Gate> gates;
    for (std::size_t q : support) {
        switch (term.string.at(q)) {
            case Pauli::X: gates.push_back(Gate::h(static_cast<int>(q))); break;
            case Pauli::Y:
                gates.push_back(Gate::sdag(static_cast<int>(q)));
                gates.push_back(Gate::h(static_cast<int>(q)));
                break;
            default: break;
        }
    }

    switch (arch) {
        case EntanglerArch::Ladder: {
            for (std::size_t i = 0; i + 1 < support.size(); ++i) {
                gates.push_back(Gate::cnot(static_cast<int>(support[i]),
                                           static_cast<int>(support[i + 1])));
            }
            gates.push_back(Gate::rz(angle, static_cast<int>(support.back())));
            for (std::size_t i = support.size() - 1; i-- > 0;) {
                gates.push_back(Gate::cnot(static_cast<int>(support[i]),
                                           static_cast<int>(support[i + 1])));
            }
            break;
        }
        case EntanglerArch::Star: {
            const int target = static_cast<int>(support.back());
            for (std::size_t i = 0; i + 1 < support.size(); ++i) {
                gates.push_back(Gate::cnot(static_cast<int>(support[i]), target));
            }
            gates.push_back(Gate::rz(angle, target));
            for (std::size_t i = support.size() - 1; i-- > 0;) {
                gates.push_back(Gate::cnot(static_cast<int>(support[i]), target));
            }
            break;
        }
        case EntanglerArch::StarAncilla: {
            const int ancilla = static_cast<int>(width);
            for (std::size_t q : support) {
                gates.push_back(Gate::cnot(static_cast<int>(q), ancilla));
            }
            gates.push_back(Gate::rz(angle, ancilla));
            for (std::size_t i = support.size(); i-- > 0;) {
                gates.push_back(Gate::cnot(static_cast<int>(support[i]), ancilla));
            }
            break;
        }
    }

    for (std::size_t q : support) {
        switch (term.string.at(q)) {
            case Pauli::X: gates.push_back(Gate::h(static_cast<int>(q))); break;
            case Pauli::Y:
                gates.push_back(Gate::h(static_cast<int>(q)));
                gates.push_back(Gate::s(static_cast<int>(q)));
                break;
            default: break;
        }
    }
    return gates;
}

Circuit assemble(const OrderingPlan& plan, const Hamiltonian& h, double t, int r,
                 EntanglerArch arch) {
    if (r < 1) {
        throw std::runtime_error("assemble: Trotter number must be >= 1");
    }
    if (!is_permutation(plan.term_order, h.num_terms())) {
        throw std::runtime_error("assemble: plan is not a permutation of the terms");
    }
    Circuit c;
    c.num_data = static_cast<int>(h.width);
    c.has_ancilla = (arch == EntanglerArch::StarAncilla);
    c.num_qubits = c.num_data + (c.has_ancilla ? 1 : 0);
    c.trotter_r = r;
    c.time = t;

    const double dt = t / r;
    std::vector<Gate> repetition;
    for (std::size_t idx : plan.term_order) {
        const auto sub = synthesize_term(h.terms[idx], dt, arch, h.width);
        repetition.insert(repetition.end(), sub.begin(), sub.end());
    }
    c.gates.reserve(repetition.size() * static_cast<std::size_t>(r));
    for (int rep = 0; rep < r; ++rep) {
        c.gates.insert(c.gates.end(), repetition.begin(), repetition.end());
    }
    return c;
}

namespace {

bool inverse_pair(const Gate& a, const Gate& b) {
    if (a.q0 != b.q0) return false;
    return (a.kind == GateKind::H && b.kind == GateKind::H) ||
           (a.kind == GateKind::S && b.kind == GateKind::Sdag) ||
           (a.kind == GateKind::Sdag && b.kind == GateKind::S);
}

// Conservative commutation table against CNOT(c, t).
bool commutes_with_cnot(const Gate& g, int c, int t) {
    if (!g.touches(c) && !g.touches(t)) return true;
    switch (g.kind) {
        case GateKind::Rz:
        case GateKind::S:
        case GateKind::Sdag:
            return g.q0 == c;  // diagonal on the control; blocks on the target
        case GateKind::X:
            return g.q0 == t;
        case GateKind::Cnot:
            if (g.q0 == t || g.q1 == c) return false;  // crossed control/target
            return true;  // shares the control, shares the target, or disjoint
        case GateKind::H:
            return false;
        }
    return false;
}

// Remove adjacent-on-wire inverse single-qubit pairs until stable.
bool single_qubit_pass(std::list<Gate>& gates) {
    bool changed = false;
    bool local = true;
    while (local) {
        local = false;
        for (auto it = gates.begin(); it != gates.end(); ++it) {
            if (it->kind == GateKind::Cnot || it->kind == GateKind::Rz ||
                it->kind == GateKind::X) {
                continue;
            }
            auto next = std::next(it);
            while (next != gates.end() && !next->touches(it->q0)) ++next;
            if (next != gates.end() && inverse_pair(*it, *next)) {
                gates.erase(next);
                it = gates.erase(it);
                local = true;
                changed = true;
                if (it == gates.end()) break;
            }
        }
    }
    return changed;
}

// Remove identical CNOT pairs whose in-between gates all commute with them.
bool cnot_pass(std::list<Gate>& gates) {
    bool changed = false;
    bool local = true;
    while (local) {
        local = false;
        for (auto it = gates.begin(); it != gates.end(); ++it) {
            if (it->kind != GateKind::Cnot) continue;
            const int c = it->q0;
            const int t = it->q1;
            auto probe = std::next(it);
            while (probe != gates.end()) {
                if (probe->kind == GateKind::Cnot && probe->q0 == c && probe->q1 == t) {
                    gates.erase(probe);
                    it = gates.erase(it);
                    local = true;
                    changed = true;
                    break;
                }
                if (!commutes_with_cnot(*probe, c, t)) break;
                ++probe;
            }
            if (it == gates.end()) break;
        }
    }
    return changed;
}

}  // namespace

Circuit cancel_gates(const Circuit& c) {
    std::list<Gate> gates(c.gates.begin(), c.gates.end());
    bool changed = true;
    while (changed) {
        changed = single_qubit_pass(gates);
        changed = cnot_pass(gates) || changed;
    }
    Circuit out = c;
    out.gates.assign(gates.begin(), gates.end());
    return out;
}

std::size_t cnot_count(const Circuit& c) {
    return static_cast<std::size_t>(std::count_if(
        c.gates.begin(), c.gates.end(),
        [](const Gate& g) { return g.kind == GateKind::Cnot; }));
}

void write_circuit(const Circuit& c, std::ostream& out) {
    char buf[64];
    out << "width " << c.num_qubits << '\n';
    if (c.has_ancilla) out << "ancilla " << c.ancilla() << '\n';
    out << "r " << c.trotter_r << '\n';
    std::snprintf(buf, sizeof(buf), "%.10g", c.time);
    out << "t " << buf << '\n';
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::H: out << "H " << g.q0 << '\n'; break;
            case GateKind::S: out << "S " << g.q0 << '\n'; break;
            case GateKind::Sdag: out << "SDG " << g.q0 << '\n'; break;
            case GateKind::X: out << "X " << g.q0 << '\n'; break;
            case GateKind::Rz:
                std::snprintf(buf, sizeof(buf), "%.10g", g.angle);
                out << "RZ " << buf << ' ' << g.q0 << '\n';
                break;
            case GateKind::Cnot: out << "CNOT " << g.q0 << ' ' << g.q1 << '\n'; break;
        }
    }
}

std::string circuit_to_string(const Circuit& c) {
    std::ostringstream out;
    write_circuit(c, out);
    return out.str();
}

Circuit read_circuit(std::istream& in) {
    Circuit c;
    c.num_qubits = -1;
    std::string line;
    std::size_t line_no = 0;
    int ancilla = -1;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string op;
        if (!(fields >> op)) continue;
        auto fail = [&](const std::string& why) {
            throw std::runtime_error("circuit line " + std::to_string(line_no) + ": " + why);
        };
        if (op == "width") {
            if (!(fields >> c.num_qubits)) fail("bad width");
        } else if (op == "ancilla") {
            if (!(fields >> ancilla)) fail("bad ancilla");
        } else if (op == "r") {
            if (!(fields >> c.trotter_r)) fail("bad r");
        } else if (op == "t") {
            if (!(fields >> c.time)) fail("bad t");
        } else if (op == "H" || op == "S" || op == "SDG" || op == "X") {
            int q;
            if (!(fields >> q)) fail("bad qubit");
            if (op == "H") c.gates.push_back(Gate::h(q));
            else if (op == "S") c.gates.push_back(Gate::s(q));
            else if (op == "SDG") c.gates.push_back(Gate::sdag(q));
            else c.gates.push_back(Gate::x(q));
        } else if (op == "RZ") {
            double angle;
            int q;
            if (!(fields >> angle >> q)) fail("bad RZ");
            c.gates.push_back(Gate::rz(angle, q));
        } else if (op == "CNOT") {
            int a, b;
            if (!(fields >> a >> b)) fail("bad CNOT");
            if (a == b) fail("CNOT control equals target");
            c.gates.push_back(Gate::cnot(a, b));
        } else {
            fail("unknown op '" + op + "'");
        }
    }
    if (c.num_qubits <= 0) {
        throw std::runtime_error("circuit: missing width header");
    }
    c.has_ancilla = (ancilla >= 0);
    c.num_data = c.has_ancilla ? ancilla : c.num_qubits;
    for (const Gate& g : c.gates) {
        if (g.q0 >= c.num_qubits || (g.kind == GateKind::Cnot && g.q1 >= c.num_qubits)) {
            throw std::runtime_error("circuit: gate index out of range");
        }
    }
    return c;
}

}  // namespace dqs
