#include "dqs/tsp.hpp"

#include "dqs/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dqs {

int cnot_distance(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size()) {
        throw std::runtime_error("cnot_distance: width mismatch");
    }
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Pauli pa = a.at(i);
        const Pauli pb = b.at(i);
        if (pa == pb) continue;
        d += 1;
        if (pa != Pauli::I && pb != Pauli::I) d += 1;
    }
    return d;
}

namespace {

void check_metric(const DistanceMatrix& m) {
    const std::size_t k = m.size;
    for (std::size_t i = 0; i < k; ++i) {
        if (m.at(i, i) != 0) throw std::runtime_error("distance matrix: nonzero diagonal");
        for (std::size_t j = i + 1; j < k; ++j) {
            if (m.at(i, j) != m.at(j, i)) throw std::runtime_error("distance matrix: asymmetric");
            if (m.at(i, j) < 0) throw std::runtime_error("distance matrix: negative entry");
        }
    }
    auto check_triple = [&](std::size_t i, std::size_t j, std::size_t l) {
        if (m.at(i, j) + m.at(j, l) < m.at(i, l)) {
            throw std::runtime_error("distance matrix: triangle inequality violated");
        }
    };
    if (k <= 64) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t l = 0; l < k; ++l) check_triple(i, j, l);
    } else {
        std::mt19937_64 rng(0x7a5f00d5u);
        for (int s = 0; s < 100000; ++s) {
            check_triple(bounded_uint(rng, k), bounded_uint(rng, k), bounded_uint(rng, k));
        }
    }
}

long long order_cost(const DistanceMatrix& m, const std::vector<std::size_t>& order) {
    long long cost = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        cost += m.at(order[i], order[i + 1]);
    }
    return cost;
}

PathSolution finish_solution(const DistanceMatrix& m, std::vector<std::size_t> order) {
    // Orientation is free; pick the lower-index endpoint first.
    if (!order.empty() && order.back() < order.front()) {
        std::reverse(order.begin(), order.end());
    }
    PathSolution sol;
    sol.transition_cost = order_cost(m, order);
    sol.total_cnots =
        sol.transition_cost + m.node_weights[order.front()] + m.node_weights[order.back()];
    sol.order = std::move(order);
    return sol;
}

}  // namespace

DistanceMatrix build_distance_matrix(const std::vector<PauliString>& strings) {
    if (strings.empty()) {
        throw std::runtime_error("build_distance_matrix: no strings");
    }
    DistanceMatrix m;
    m.size = strings.size();
    m.entries.assign(m.size * m.size, 0);
    m.node_weights.resize(m.size);
    for (std::size_t i = 0; i < m.size; ++i) {
        m.node_weights[i] = static_cast<int>(hamming_weight(strings[i]));
        for (std::size_t j = i + 1; j < m.size; ++j) {
            const int d = cnot_distance(strings[i], strings[j]);
            m.entries[i * m.size + j] = d;
            m.entries[j * m.size + i] = d;
        }
    }
    check_metric(m);
    return m;
}

PathSolution solve_path_exact(const DistanceMatrix& m, std::size_t ceiling) {
    const std::size_t k = m.size;
    if (k > ceiling) {
        throw std::runtime_error("solve_path_exact: " + std::to_string(k) +
                                 " nodes exceeds ceiling " + std::to_string(ceiling));
    }
    if (k == 1) return finish_solution(m, {0});

    // Held-Karp over the real nodes with an implicit zero-cost virtual start:
    // dp[S][j] = cheapest path from the virtual node through set S ending at j.
    const std::size_t full = (std::size_t{1} << k) - 1;
    constexpr long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<std::vector<long long>> dp(full + 1, std::vector<long long>(k, inf));
    std::vector<std::vector<int>> parent(full + 1, std::vector<int>(k, -1));
    for (std::size_t j = 0; j < k; ++j) {
        dp[std::size_t{1} << j][j] = 0;
    }
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t last = 0; last < k; ++last) {
            const long long base = dp[mask][last];
            if (base >= inf || !(mask & (std::size_t{1} << last))) continue;
            for (std::size_t next = 0; next < k; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                const std::size_t nmask = mask | (std::size_t{1} << next);
                const long long cost = base + m.at(last, next);
                if (cost < dp[nmask][next]) {
                    dp[nmask][next] = cost;
                    parent[nmask][next] = static_cast<int>(last);
                }
            }
        }
    }

    std::size_t best_end = 0;
    long long best_cost = inf;
    for (std::size_t j = 0; j < k; ++j) {
        if (dp[full][j] < best_cost) {  // closing edge back to the virtual node is free
            best_cost = dp[full][j];
            best_end = j;
        }
    }

    std::vector<std::size_t> order;
    order.reserve(k);
    std::size_t mask = full;
    std::size_t node = best_end;
    while (true) {
        order.push_back(node);
        const int prev = parent[mask][node];
        mask &= ~(std::size_t{1} << node);
        if (prev < 0) break;
        node = static_cast<std::size_t>(prev);
    }
    std::reverse(order.begin(), order.end());
    return finish_solution(m, std::move(order));
}

namespace {

std::vector<std::size_t> nearest_neighbor_cycle(const DistanceMatrix& m) {
    const std::size_t k = m.size;
    std::vector<std::size_t> tour{0};
    std::vector<bool> used(k, false);
    used[0] = true;
    while (tour.size() < k) {
        const std::size_t last = tour.back();
        std::size_t best = 0;
        int best_d = std::numeric_limits<int>::max();
        for (std::size_t c = 0; c < k; ++c) {
            if (!used[c] && m.at(last, c) < best_d) {
                best_d = m.at(last, c);
                best = c;
            }
        }
        used[best] = true;
        tour.push_back(best);
    }
    return tour;
}

// First-improvement 2-opt on the cycle, repeated to a local optimum.
void two_opt(const DistanceMatrix& m, std::vector<std::size_t>& tour) {
    const std::size_t k = tour.size();
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const std::size_t a = tour[i];
                const std::size_t b = tour[(i + 1) % k];
                const std::size_t c = tour[j];
                const std::size_t d = tour[(j + 1) % k];
                if (a == c || b == d) continue;
                const long long before = m.at(a, b) + m.at(c, d);
                const long long after = m.at(a, c) + m.at(b, d);
                if (after < before) {
                    std::reverse(tour.begin() + i + 1, tour.begin() + j + 1);
                    improved = true;
                }
            }
        }
    }
}

// Minimum-weight perfect matching by subset DP; nodes.size() must be even.
std::vector<std::pair<std::size_t, std::size_t>> exact_matching(
    const DistanceMatrix& m, const std::vector<std::size_t>& nodes) {
    const std::size_t n = nodes.size();
    const std::size_t full = (std::size_t{1} << n) - 1;
    constexpr long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> dp(full + 1, inf);
    std::vector<std::pair<int, int>> choice(full + 1, {-1, -1});
    dp[0] = 0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        std::size_t i = 0;
        while (!(mask & (std::size_t{1} << i))) ++i;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const std::size_t rest = mask & ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
            if (dp[rest] >= inf) continue;
            const long long cost = dp[rest] + m.at(nodes[i], nodes[j]);
            if (cost < dp[mask]) {
                dp[mask] = cost;
                choice[mask] = {static_cast<int>(i), static_cast<int>(j)};
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t mask = full;
    while (mask) {
        const auto [i, j] = choice[mask];
        pairs.emplace_back(nodes[i], nodes[j]);
        mask &= ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
    }
    return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_matching(
    const DistanceMatrix& m, const std::vector<std::size_t>& nodes) {
    std::vector<std::tuple<int, std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            edges.emplace_back(m.at(nodes[i], nodes[j]), nodes[i], nodes[j]);
        }
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<bool> used(m.size, false);
    for (const auto& [d, a, b] : edges) {
        if (!used[a] && !used[b]) {
            used[a] = true;
            used[b] = true;
            pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

std::vector<std::size_t> christofides_cycle(const DistanceMatrix& m) {
    const std::size_t k = m.size;

    // Prim MST.
    std::vector<int> parent(k, -1);
    std::vector<int> key(k, std::numeric_limits<int>::max());
    std::vector<bool> in_tree(k, false);
    key[0] = 0;
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t u = 0;
        int best = std::numeric_limits<int>::max();
        for (std::size_t v = 0; v < k; ++v) {
            if (!in_tree[v] && key[v] < best) {
                best = key[v];
                u = v;
            }
        }
        in_tree[u] = true;
        for (std::size_t v = 0; v < k; ++v) {
            if (!in_tree[v] && m.at(u, v) < key[v]) {
                key[v] = m.at(u, v);
                parent[v] = static_cast<int>(u);
            }
        }
    }
    std::vector<std::vector<std::size_t>> multi(k);
    for (std::size_t v = 1; v < k; ++v) {
        multi[v].push_back(parent[v]);
        multi[parent[v]].push_back(v);
    }

    // Perfect matching on the odd-degree vertices.
    std::vector<std::size_t> odd;
    for (std::size_t v = 0; v < k; ++v) {
        if (multi[v].size() % 2 == 1) odd.push_back(v);
    }
    const auto pairs = odd.size() <= 20 ? exact_matching(m, odd) : greedy_matching(m, odd);
    for (const auto& [a, b] : pairs) {
        multi[a].push_back(b);
        multi[b].push_back(a);
    }

    // Eulerian circuit (Hierholzer), shortcut to a Hamiltonian cycle.
    std::vector<std::size_t> circuit;
    std::vector<std::size_t> stack{0};
    auto degrees = multi;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        if (degrees[v].empty()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            const std::size_t u = degrees[v].back();
            degrees[v].pop_back();
            auto it = std::find(degrees[u].begin(), degrees[u].end(), v);
            degrees[u].erase(it);
            stack.push_back(u);
        }
    }
    std::vector<std::size_t> tour;
    std::vector<bool> seen(k, false);
    for (std::size_t v : circuit) {
        if (!seen[v]) {
            seen[v] = true;
            tour.push_back(v);
        }
    }
    return tour;
}

}  // namespace

PathSolution solve_path_approx(const DistanceMatrix& m, ApproxMode mode) {
    const std::size_t k = m.size;
    if (k <= 3) return solve_path_exact(m);

    std::vector<std::size_t> tour;
    if (mode == ApproxMode::Christofides) {
        tour = christofides_cycle(m);
    } else {
        tour = nearest_neighbor_cycle(m);
        two_opt(m, tour);
    }

    // Break the cycle at its most expensive edge (first such edge on ties).
    std::size_t cut = 0;
    int worst = -1;
    for (std::size_t i = 0; i < k; ++i) {
        const int d = m.at(tour[i], tour[(i + 1) % k]);
        if (d > worst) {
            worst = d;
            cut = i;
        }
    }
    std::vector<std::size_t> order;
    order.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        order.push_back(tour[(cut + 1 + i) % k]);
    }
    return finish_solution(m, std::move(order));
}

long long path_total_cnots(const std::vector<std::size_t>& order,
                           const std::vector<PauliString>& strings) {
    std::vector<bool> seen(strings.size(), false);
    for (std::size_t v : order) {
        if (v >= strings.size() || seen[v]) {
            throw std::runtime_error("path_total_cnots: order is not a valid permutation");
        }
        seen[v] = true;
    }
    if (order.size() != strings.size() || order.empty()) {
        throw std::runtime_error("path_total_cnots: order is not a valid permutation");
    }
    long long total = static_cast<long long>(hamming_weight(strings[order.front()])) +
                      static_cast<long long>(hamming_weight(strings[order.back()]));
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        total += cnot_distance(strings[order[i]], strings[order[i + 1]]);
    }
    return total;
}

std::string dump_matrix(const DistanceMatrix& m) {
    std::ostringstream out;
    out << m.size << " nodes\n";
    for (std::size_t i = 0; i < m.size; ++i) {
        for (std::size_t j = 0; j < m.size; ++j) {
            out << (j ? " " : "") << m.at(i, j);
        }
        out << "  w=" << m.node_weights[i] << '\n';
    }
    return out.str();
}

std::string dump_solution(const PathSolution& s) {
    std::ostringstream out;
    out << "order:";
    for (std::size_t v : s.order) out << ' ' << v;
    out << "\ntransition_cost: " << s.transition_cost << "\ntotal_cnots: " << s.total_cnots
        << '\n';
    return out.str();
}

}  // namespace dqs
