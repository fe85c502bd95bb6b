#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dqs {

// Single-qubit Pauli label. The sort order used for term ordering is
// X < Y < Z < I, which is not ASCII order.
enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

int lex_rank(Pauli p);
bool is_pauli_char(char c);

// Tensor product of single-qubit Paulis over a fixed register width.
class PauliString {
public:
    explicit PauliString(std::string chars);

    std::size_t size() const { return chars_.size(); }
    Pauli at(std::size_t i) const { return static_cast<Pauli>(chars_[i]); }
    const std::string& str() const { return chars_; }
    bool is_identity() const;

    // Indices of the non-identity characters, ascending.
    std::vector<std::size_t> support() const;

    bool operator==(const PauliString& other) const = default;

private:
    std::string chars_;
};

// Strict X < Y < Z < I comparison, position by position.
bool lex_less(const PauliString& a, const PauliString& b);

struct WeightedPauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

struct Hamiltonian {
    std::vector<WeightedPauliTerm> terms;
    std::size_t width = 0;

    std::size_t num_terms() const { return terms.size(); }
};

// True iff the strings commute under the Pauli algebra: the number of
// positions where the characters differ and neither is I must be even.
// Throws on width mismatch.
bool commutes(const PauliString& a, const PauliString& b);

// Number of non-I characters.
std::size_t hamming_weight(const PauliString& p);

// Parses "<coefficient> <pauli-string>" lines. '#' starts a comment and
// blank lines are skipped. Duplicate strings merge by coefficient addition
// (the term is dropped if the merged coefficient is exactly zero). Input
// line order is preserved and serves as the "unordered" baseline order.
//
// Errors: malformed or zero coefficient, illegal character, inconsistent
// widths, all-identity string, empty input.
Hamiltonian parse_hamiltonian(std::istream& in);
Hamiltonian parse_hamiltonian(std::string_view text);

// Inverse of parse_hamiltonian; coefficients keep full double precision
// so parse(print(h)) reproduces h exactly.
std::string print_hamiltonian(const Hamiltonian& h);

Hamiltonian load_hamiltonian_file(const std::string& path);

// All *.ham files in a directory, sorted by filename; pairs of
// (basename without extension, hamiltonian).
std::vector<std::pair<std::string, Hamiltonian>> load_hamiltonian_dir(const std::string& dir);

}  // namespace dqs
