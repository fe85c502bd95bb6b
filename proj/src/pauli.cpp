#include "dqs/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dqs {

int lex_rank(Pauli p) {
    switch (p) {
        case Pauli::X: return 0;
        case Pauli::Y: return 1;
        case Pauli::Z: return 2;
        case Pauli::I: return 3;
    }
    throw std::runtime_error("invalid Pauli value");
}

bool is_pauli_char(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

PauliString::PauliString(std::string chars) : chars_(std::move(chars)) {
    if (chars_.empty()) {
        throw std::runtime_error("Pauli string must have width >= 1");
    }
    for (char c : chars_) {
        if (!is_pauli_char(c)) {
            throw std::runtime_error(std::string("illegal Pauli character '") + c + "'");
        }
    }
}

bool PauliString::is_identity() const {
    return chars_.find_first_not_of('I') == std::string::npos;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < chars_.size(); ++i) {
        if (chars_[i] != 'I') out.push_back(i);
    }
    return out;
}

bool lex_less(const PauliString& a, const PauliString& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int ra = lex_rank(a.at(i));
        const int rb = lex_rank(b.at(i));
        if (ra != rb) return ra < rb;
    }
    return a.size() < b.size();
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size()) {
        throw std::runtime_error("commutes: width mismatch");
    }
    std::size_t anti = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Pauli pa = a.at(i);
        const Pauli pb = b.at(i);
        if (pa != pb && pa != Pauli::I && pb != Pauli::I) ++anti;
    }
    return anti % 2 == 0;
}

std::size_t hamming_weight(const PauliString& p) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.at(i) != Pauli::I) ++w;
    }
    return w;
}

namespace {

double parse_coefficient(const std::string& token, std::size_t line_no) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": malformed coefficient '" + token + "'");
    }
    if (pos != token.size()) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": malformed coefficient '" + token + "'");
    }
    if (!std::isfinite(value)) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": coefficient must be finite");
    }
    if (value == 0.0) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": zero coefficient");
    }
    return value;
}

}  // namespace

Hamiltonian parse_hamiltonian(std::istream& in) {
    Hamiltonian h;
    std::unordered_map<std::string, std::size_t> index_of;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string coeff_token, string_token, extra;
        if (!(fields >> coeff_token)) continue;  // blank or comment-only line
        if (!(fields >> string_token)) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected '<coefficient> <pauli-string>'");
        }
        if (fields >> extra) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": trailing token '" + extra + "'");
        }

        const double coeff = parse_coefficient(coeff_token, line_no);
        for (char c : string_token) {
            if (!is_pauli_char(c)) {
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": illegal character '" + std::string(1, c) + "'");
            }
        }
        PauliString ps(string_token);
        if (ps.is_identity()) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": all-identity term is excluded (global phase only)");
        }
        if (h.width == 0) {
            h.width = ps.size();
        } else if (ps.size() != h.width) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": width " + std::to_string(ps.size()) +
                                     " does not match width " + std::to_string(h.width));
        }

        if (auto it = index_of.find(string_token); it != index_of.end()) {
            h.terms[it->second].coefficient += coeff;
        } else {
            index_of.emplace(string_token, h.terms.size());
            h.terms.push_back({coeff, std::move(ps)});
        }
    }

    // Merged coefficients that cancel exactly drop out.
    std::erase_if(h.terms, [](const WeightedPauliTerm& t) { return t.coefficient == 0.0; });

    if (h.terms.empty()) {
        throw std::runtime_error("empty Hamiltonian");
    }
    return h;
}

Hamiltonian parse_hamiltonian(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_hamiltonian(in);
}

std::string print_hamiltonian(const Hamiltonian& h) {
    std::string out;
    char buf[64];
    for (const auto& term : h.terms) {
        std::snprintf(buf, sizeof(buf), "%.17g", term.coefficient);
        out += buf;
        out += ' ';
        out += term.string.str();
        out += '\n';
    }
    return out;
}

Hamiltonian load_hamiltonian_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    try {
        return parse_hamiltonian(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<std::pair<std::string, Hamiltonian>> load_hamiltonian_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("'" + dir + "' is not a directory");
    }
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ham") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<std::pair<std::string, Hamiltonian>> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        out.emplace_back(p.stem().string(), load_hamiltonian_file(p.string()));
    }
    return out;
}

}  // namespace dqs
