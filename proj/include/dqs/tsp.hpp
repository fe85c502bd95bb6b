#pragma once

#include "dqs/pauli.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dqs {

// CNOT cost of the transition zone between two consecutive term
// sub-circuits: every differing position costs 1, plus 1 more when neither
// character is I (each side then keeps its own entangler CNOT).
// Symmetric and metric. Throws on width mismatch.
int cnot_distance(const PauliString& a, const PauliString& b);

struct DistanceMatrix {
    std::size_t size = 0;
    std::vector<int> entries;       // row-major, size*size
    std::vector<int> node_weights;  // Hamming weight of each string

    int at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

struct PathSolution {
    std::vector<std::size_t> order;  // permutation of [0, k)
    long long transition_cost = 0;   // sum of distances along consecutive pairs
    long long total_cnots = 0;       // transition_cost + weights of both endpoints
};

// Pairwise matrix with the metric axioms asserted at build time (full
// triangle check up to 64 strings, sampled beyond).
DistanceMatrix build_distance_matrix(const std::vector<PauliString>& strings);

inline constexpr std::size_t kExactPathCeiling = 16;

// Optimal Hamiltonian path by Held-Karp dynamic programming on the graph
// augmented with a zero-cost virtual node (the cycle is cut there).
// O(k^2 2^k); refuses k above the ceiling.
PathSolution solve_path_exact(const DistanceMatrix& m, std::size_t ceiling = kExactPathCeiling);

enum class ApproxMode { NearestNeighbor2Opt, Christofides };

// Approximate solver: a TSP cycle is built (nearest-neighbor + 2-opt by
// default, Christofides as an optional mode), then the most expensive edge
// is deleted to produce a path. k <= 3 delegates to the exact solver.
PathSolution solve_path_approx(const DistanceMatrix& m,
                               ApproxMode mode = ApproxMode::NearestNeighbor2Opt);

// Post-cancellation CNOT count of the star+ancilla circuit for this order:
// weight(first) + sum of consecutive distances + weight(last).
long long path_total_cnots(const std::vector<std::size_t>& order,
                           const std::vector<PauliString>& strings);

std::string dump_matrix(const DistanceMatrix& m);
std::string dump_solution(const PathSolution& s);

}  // namespace dqs
