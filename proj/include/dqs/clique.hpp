#pragma once

#include "dqs/pauli.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dqs {

// Vertices are term indices into a Hamiltonian; an edge joins every pair
// of commuting terms. Coefficients play no role here.
struct CommutationGraph {
    std::size_t num_vertices = 0;
    std::vector<std::vector<bool>> adj;

    bool edge(std::size_t i, std::size_t j) const { return adj[i][j]; }
};

// Partition of the term indices into mutually commuting families.
struct CliqueCover {
    std::vector<std::vector<std::size_t>> cliques;
};

struct CliquePermutation {
    std::vector<std::size_t> order;  // permutation of clique indices
    double score = 0.0;              // commutator-magnitude proxy of the chosen order
};

enum class CoverMode { Exact, Greedy };

inline constexpr std::size_t kExactCoverCeiling = 30;

CommutationGraph build_graph(const Hamiltonian& h);

// All maximal cliques (Bron-Kerbosch with pivoting). Each clique is sorted
// ascending; the list is sorted by size descending, then lexicographically.
std::vector<std::vector<std::size_t>> maximal_cliques(const CommutationGraph& g);

// Exact mode finds a minimum-cardinality cover by branch and bound over the
// maximal cliques and refuses graphs above exact_ceiling vertices. Greedy
// mode repeatedly extracts the maximal clique covering the most remaining
// vertices; valid but without an optimality guarantee.
CliqueCover min_clique_cover(const CommutationGraph& g, CoverMode mode,
                             std::size_t exact_ceiling = kExactCoverCeiling);

// Exhaustive check: cliques are disjoint, cover all vertices, and every
// intra-clique pair is an edge.
bool cover_is_valid(const CommutationGraph& g, const CliqueCover& cover);

// Sum of |a_i * b_j| over the cross pairs of the two cliques whose Pauli
// strings do not commute (pairs with vanishing commutator are excluded).
double clique_pair_score(const Hamiltonian& h, const std::vector<std::size_t>& c1,
                         const std::vector<std::size_t>& c2);

// Score of a clique ordering: clique_pair_score summed over consecutive pairs.
double permutation_score(const Hamiltonian& h, const CliqueCover& cover,
                         const std::vector<std::size_t>& order);

// Tree-growth ordering heuristic. For each clique as root it greedily grows
// simple paths through the clique set, extending to the unvisited cliques
// that share the most commutation-graph edges with the current clique (ties
// branch, capped at M paths per root). The identity order is always a
// candidate, so the result never scores worse than it. At most M^2 + M
// candidates, O(M^4) time overall. candidate_count, when given, receives
// the number of orderings that were scored.
CliquePermutation permutation_heuristic(const Hamiltonian& h, const CliqueCover& cover,
                                        std::size_t* candidate_count = nullptr);

// Diagnostic text report: clique membership lists and ordering score.
std::string cover_report(const Hamiltonian& h, const CliqueCover& cover,
                         const CliquePermutation& perm);

}  // namespace dqs
