#include "dqs/ordering.hpp"

#include "dqs/rng.hpp"
#include "dqs/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dqs {

bool is_permutation(const std::vector<std::size_t>& order, std::size_t k) {
    if (order.size() != k) return false;
    std::vector<bool> seen(k, false);
    for (std::size_t v : order) {
        if (v >= k || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

namespace {

std::vector<std::size_t> iota_order(std::size_t k) {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

}  // namespace

OrderingPlan order_unordered(const Hamiltonian& h) {
    return {"unordered", iota_order(h.num_terms()), {}};
}

OrderingPlan order_lexicographic(const Hamiltonian& h) {
    auto order = iota_order(h.num_terms());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(h.terms[a].string, h.terms[b].string);
    });
    return {"lexicographic", std::move(order), {}};
}

OrderingPlan order_magnitude(const Hamiltonian& h) {
    auto order = iota_order(h.num_terms());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(h.terms[a].coefficient);
        const double mb = std::abs(h.terms[b].coefficient);
        if (ma != mb) return ma > mb;
        return lex_less(h.terms[a].string, h.terms[b].string);
    });
    return {"magnitude", std::move(order), {}};
}

OrderingPlan order_random(const Hamiltonian& h, std::uint64_t seed) {
    auto order = iota_order(h.num_terms());
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uint(rng, i));
        std::swap(order[i - 1], order[j]);
    }
    return {"random(" + std::to_string(seed) + ";" + kGeneratorName + ")", std::move(order), {}};
}

OrderingPlan order_deplete_groups(const Hamiltonian& h, const CliqueCover& cover) {
    if (!is_permutation([&] {
            std::vector<std::size_t> all;
            for (const auto& c : cover.cliques)
                all.insert(all.end(), c.begin(), c.end());
            std::sort(all.begin(), all.end());
            return all;
        }(), h.num_terms())) {
        throw std::runtime_error("order_deplete_groups: cover does not partition the terms");
    }

    // Per-clique queues sorted by |coefficient| descending (ties lexicographic).
    std::vector<std::vector<std::size_t>> queues;
    for (const auto& c : cover.cliques) {
        auto q = c;
        std::stable_sort(q.begin(), q.end(), [&](std::size_t a, std::size_t b) {
            const double ma = std::abs(h.terms[a].coefficient);
            const double mb = std::abs(h.terms[b].coefficient);
            if (ma != mb) return ma > mb;
            return lex_less(h.terms[a].string, h.terms[b].string);
        });
        queues.push_back(std::move(q));
    }

    std::vector<std::size_t> order;
    order.reserve(h.num_terms());
    std::vector<std::size_t> next(queues.size(), 0);
    while (order.size() < h.num_terms()) {
        // One round: the current front of every non-exhausted clique,
        // emitted by magnitude descending, clique index on ties.
        std::vector<std::pair<std::size_t, std::size_t>> round;  // (clique, term)
        for (std::size_t c = 0; c < queues.size(); ++c) {
            if (next[c] < queues[c].size()) round.emplace_back(c, queues[c][next[c]++]);
        }
        std::stable_sort(round.begin(), round.end(), [&](const auto& a, const auto& b) {
            return std::abs(h.terms[a.second].coefficient) >
                   std::abs(h.terms[b.second].coefficient);
        });
        for (const auto& [c, term] : round) order.push_back(term);
    }
    return {"deplete_groups", std::move(order), {}};
}

OrderingPlan order_max_commute(const Hamiltonian& h, const CliqueCover& cover,
                               const CliquePermutation& perm, IntraOrder intra) {
    if (perm.order.size() != cover.cliques.size()) {
        throw std::runtime_error("order_max_commute: permutation does not match cover");
    }
    OrderingPlan plan;
    switch (intra) {
        case IntraOrder::TspExact: plan.strategy = "max_commute_tsp(exact)"; break;
        case IntraOrder::TspApprox: plan.strategy = "max_commute_tsp(approx)"; break;
        case IntraOrder::Lex: plan.strategy = "max_commute_lex"; break;
    }

    for (std::size_t c : perm.order) {
        std::vector<std::size_t> members = cover.cliques[c];
        if (intra == IntraOrder::Lex) {
            std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
                return lex_less(h.terms[a].string, h.terms[b].string);
            });
        } else {
            std::vector<PauliString> strings;
            strings.reserve(members.size());
            for (std::size_t v : members) strings.push_back(h.terms[v].string);
            const DistanceMatrix m = build_distance_matrix(strings);
            PathSolution sol;
            if (intra == IntraOrder::TspExact && members.size() > kExactPathCeiling) {
                std::cerr << "note: clique of " << members.size()
                          << " terms exceeds the exact path ceiling; using the approximate solver\n";
            }
            if (intra == IntraOrder::TspExact && members.size() <= kExactPathCeiling) {
                sol = solve_path_exact(m);
            } else {
                sol = solve_path_approx(m);
            }
            std::vector<std::size_t> reordered;
            reordered.reserve(members.size());
            for (std::size_t pos : sol.order) reordered.push_back(members[pos]);
            members = std::move(reordered);
        }
        plan.term_order.insert(plan.term_order.end(), members.begin(), members.end());
        plan.clique_boundaries.push_back(plan.term_order.size());
    }
    return plan;
}

OrderingPlan order_tsp(const Hamiltonian& h, bool exact) {
    std::vector<PauliString> strings;
    strings.reserve(h.num_terms());
    for (const auto& term : h.terms) strings.push_back(term.string);
    const DistanceMatrix m = build_distance_matrix(strings);
    if (exact && h.num_terms() > kExactPathCeiling) {
        std::cerr << "note: " << h.num_terms()
                  << " terms exceed the exact path ceiling; using the approximate solver\n";
        exact = false;
    }
    const PathSolution sol = exact ? solve_path_exact(m) : solve_path_approx(m);
    return {exact ? "tsp(exact)" : "tsp(approx)", sol.order, {}};
}

std::string plan_report(const OrderingPlan& plan) {
    std::ostringstream out;
    out << "strategy: " << plan.strategy << "\norder:";
    for (std::size_t v : plan.term_order) out << ' ' << v;
    out << "\nboundaries:";
    for (std::size_t b : plan.clique_boundaries) out << ' ' << b;
    out << '\n';
    return out.str();
}

}  // namespace dqs
