#pragma once

#include "dqs/clique.hpp"
#include "dqs/pauli.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dqs {

// How terms are ordered inside each clique of a max-commute plan.
enum class IntraOrder { TspExact, TspApprox, Lex };

struct OrderingPlan {
    std::string strategy;                        // provenance tag, e.g. "random(7;mt19937_64)"
    std::vector<std::size_t> term_order;         // permutation of [0, k)
    std::vector<std::size_t> clique_boundaries;  // cut positions after each clique segment;
                                                 // empty unless a max-commute strategy
};

bool is_permutation(const std::vector<std::size_t>& order, std::size_t k);

// Input order, kept as parsed.
OrderingPlan order_unordered(const Hamiltonian& h);

// Position-by-position sort under X < Y < Z < I.
OrderingPlan order_lexicographic(const Hamiltonian& h);

// |coefficient| descending; ties broken lexicographically.
OrderingPlan order_magnitude(const Hamiltonian& h);

// Uniform permutation from a seeded Fisher-Yates shuffle; deterministic for
// a given seed on every platform.
OrderingPlan order_random(const Hamiltonian& h, std::uint64_t seed);

// Round-robin over the cover: each round takes the remaining
// highest-|coefficient| term of every non-empty clique; a round's picks are
// emitted by magnitude descending, ties by clique index. Empty cliques are
// skipped mid-round.
OrderingPlan order_deplete_groups(const Hamiltonian& h, const CliqueCover& cover);

// Cliques laid out in perm.order, each clique internally ordered by the
// chosen intra-clique method; cut positions recorded in clique_boundaries.
OrderingPlan order_max_commute(const Hamiltonian& h, const CliqueCover& cover,
                               const CliquePermutation& perm, IntraOrder intra);

// Shortest-Hamiltonian-path order over the whole term set, ignoring
// commutation structure: pure gate-cancellation ordering. exact=true uses
// the dynamic-programming solver up to its ceiling and falls back to the
// approximate one above it.
OrderingPlan order_tsp(const Hamiltonian& h, bool exact);

// Text form: strategy tag, permutation, boundaries.
std::string plan_report(const OrderingPlan& plan);

}  // namespace dqs
