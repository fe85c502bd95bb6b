#include "dqs/clique.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dqs {

CommutationGraph build_graph(const Hamiltonian& h) {
    const std::size_t n = h.num_terms();
    CommutationGraph g;
    g.num_vertices = n;
    g.adj.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (commutes(h.terms[i].string, h.terms[j].string)) {
                g.adj[i][j] = true;
                g.adj[j][i] = true;
            }
        }
    }
    return g;
}

namespace {

using VertexSet = std::vector<std::size_t>;  // kept sorted ascending

VertexSet intersect_neighbors(const CommutationGraph& g, const VertexSet& s, std::size_t v) {
    VertexSet out;
    out.reserve(s.size());
    for (std::size_t u : s) {
        if (g.adj[v][u]) out.push_back(u);
    }
    return out;
}

void bron_kerbosch(const CommutationGraph& g, VertexSet& r, VertexSet p, VertexSet x,
                   std::vector<VertexSet>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    // Pivot on the vertex with the most neighbors in P.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    for (const VertexSet* s : {&p, &x}) {
        for (std::size_t v : *s) {
            std::size_t deg = 0;
            for (std::size_t u : p) {
                if (g.adj[v][u]) ++deg;
            }
            if (!have_pivot || deg > best) {
                best = deg;
                pivot = v;
                have_pivot = true;
            }
        }
    }
    VertexSet candidates;
    for (std::size_t v : p) {
        if (!g.adj[pivot][v]) candidates.push_back(v);
    }
    for (std::size_t v : candidates) {
        r.push_back(v);
        bron_kerbosch(g, r, intersect_neighbors(g, p, v), intersect_neighbors(g, x, v), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
}

bool clique_order_less(const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

CliqueCover greedy_cover(const CommutationGraph& g, const std::vector<VertexSet>& max_cliques) {
    CliqueCover cover;
    std::vector<bool> covered(g.num_vertices, false);
    std::size_t remaining = g.num_vertices;
    while (remaining > 0) {
        VertexSet best_piece;
        for (const auto& c : max_cliques) {
            VertexSet piece;
            for (std::size_t v : c) {
                if (!covered[v]) piece.push_back(v);
            }
            if (piece.empty()) continue;
            if (best_piece.empty() || clique_order_less(piece, best_piece)) {
                best_piece = std::move(piece);
            }
        }
        for (std::size_t v : best_piece) {
            covered[v] = true;
        }
        remaining -= best_piece.size();
        cover.cliques.push_back(std::move(best_piece));
    }
    return cover;
}

struct ExactSearch {
    const CommutationGraph& g;
    const std::vector<VertexSet>& max_cliques;
    std::size_t max_clique_size;
    CliqueCover best;
    std::vector<VertexSet> current;
    std::vector<bool> covered;
    std::size_t uncovered_count = 0;

    void run() {
        covered.assign(g.num_vertices, false);
        uncovered_count = g.num_vertices;
        recurse();
    }

    void recurse() {
        if (uncovered_count == 0) {
            if (current.size() < best.cliques.size()) {
                best.cliques = current;
            }
            return;
        }
        const std::size_t lower =
            current.size() + (uncovered_count + max_clique_size - 1) / max_clique_size;
        if (lower >= best.cliques.size()) return;

        std::size_t v = 0;
        while (covered[v]) ++v;

        // Candidate pieces: intersections with the maximal cliques containing v.
        std::vector<VertexSet> pieces;
        for (const auto& c : max_cliques) {
            if (std::find(c.begin(), c.end(), v) == c.end()) continue;
            VertexSet piece;
            for (std::size_t u : c) {
                if (!covered[u]) piece.push_back(u);
            }
            pieces.push_back(std::move(piece));
        }
        std::sort(pieces.begin(), pieces.end(), clique_order_less);
        pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());

        for (const auto& piece : pieces) {
            for (std::size_t u : piece) covered[u] = true;
            uncovered_count -= piece.size();
            current.push_back(piece);
            recurse();
            current.pop_back();
            uncovered_count += piece.size();
            for (std::size_t u : piece) covered[u] = false;
        }
    }
};

}  // namespace

std::vector<std::vector<std::size_t>> maximal_cliques(const CommutationGraph& g) {
    std::vector<VertexSet> out;
    VertexSet r, p(g.num_vertices), x;
    std::iota(p.begin(), p.end(), 0);
    bron_kerbosch(g, r, std::move(p), std::move(x), out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end(), clique_order_less);
    return out;
}

CliqueCover min_clique_cover(const CommutationGraph& g, CoverMode mode,
                             std::size_t exact_ceiling) {
    if (g.num_vertices == 0) {
        throw std::runtime_error("min_clique_cover: empty graph");
    }
    const auto cliques = maximal_cliques(g);
    CliqueCover greedy = greedy_cover(g, cliques);
    if (mode == CoverMode::Greedy) return greedy;

    if (g.num_vertices > exact_ceiling) {
        throw std::runtime_error("min_clique_cover: exact mode refuses " +
                                 std::to_string(g.num_vertices) + " terms (ceiling " +
                                 std::to_string(exact_ceiling) + ")");
    }
    ExactSearch search{g, cliques, cliques.front().size(), std::move(greedy), {}, {}, 0};
    search.run();
    return search.best;
}

bool cover_is_valid(const CommutationGraph& g, const CliqueCover& cover) {
    std::vector<int> seen(g.num_vertices, 0);
    for (const auto& c : cover.cliques) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= g.num_vertices) return false;
            ++seen[c[i]];
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                if (!g.edge(c[i], c[j])) return false;
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

double clique_pair_score(const Hamiltonian& h, const std::vector<std::size_t>& c1,
                         const std::vector<std::size_t>& c2) {
    double score = 0.0;
    for (std::size_t i : c1) {
        for (std::size_t j : c2) {
            if (!commutes(h.terms[i].string, h.terms[j].string)) {
                score += std::abs(h.terms[i].coefficient * h.terms[j].coefficient);
            }
        }
    }
    return score;
}

double permutation_score(const Hamiltonian& h, const CliqueCover& cover,
                         const std::vector<std::size_t>& order) {
    double score = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        score += clique_pair_score(h, cover.cliques[order[i]], cover.cliques[order[i + 1]]);
    }
    return score;
}

namespace {

// Number of commutation-graph edges between two cliques.
std::size_t inter_clique_edges(const CommutationGraph& g, const std::vector<std::size_t>& c1,
                               const std::vector<std::size_t>& c2) {
    std::size_t count = 0;
    for (std::size_t i : c1) {
        for (std::size_t j : c2) {
            if (g.edge(i, j)) ++count;
        }
    }
    return count;
}

// Depth-first growth of simple paths from `root`, branching only into the
// unvisited cliques with the maximal edge count to the current clique.
// Stops after `cap` complete paths.
void grow_paths(const std::vector<std::vector<std::size_t>>& edge_count, std::size_t root,
                std::size_t cap, std::vector<std::vector<std::size_t>>& out) {
    const std::size_t m = edge_count.size();
    std::vector<std::size_t> path{root};
    std::vector<bool> visited(m, false);
    visited[root] = true;
    std::size_t emitted = 0;

    auto dfs = [&](auto&& self) -> void {
        if (emitted >= cap) return;
        if (path.size() == m) {
            out.push_back(path);
            ++emitted;
            return;
        }
        const std::size_t last = path.back();
        std::size_t best = 0;
        bool any = false;
        for (std::size_t c = 0; c < m; ++c) {
            if (!visited[c]) {
                best = any ? std::max(best, edge_count[last][c]) : edge_count[last][c];
                any = true;
            }
        }
        for (std::size_t c = 0; c < m && emitted < cap; ++c) {
            if (visited[c] || edge_count[last][c] != best) continue;
            visited[c] = true;
            path.push_back(c);
            self(self);
            path.pop_back();
            visited[c] = false;
        }
    };
    dfs(dfs);
}

}  // namespace

CliquePermutation permutation_heuristic(const Hamiltonian& h, const CliqueCover& cover,
                                        std::size_t* candidate_count) {
    const std::size_t m = cover.cliques.size();
    std::vector<std::size_t> identity(m);
    std::iota(identity.begin(), identity.end(), 0);
    if (m <= 1) {
        if (candidate_count) *candidate_count = 1;
        return {identity, 0.0};
    }

    const CommutationGraph g = build_graph(h);
    std::vector<std::vector<std::size_t>> edge_count(m, std::vector<std::size_t>(m, 0));
    std::vector<std::vector<double>> pair_score(m, std::vector<double>(m, 0.0));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            edge_count[a][b] = edge_count[b][a] =
                inter_clique_edges(g, cover.cliques[a], cover.cliques[b]);
            pair_score[a][b] = pair_score[b][a] =
                clique_pair_score(h, cover.cliques[a], cover.cliques[b]);
        }
    }

    std::vector<std::vector<std::size_t>> candidates;
    for (std::size_t root = 0; root < m; ++root) {
        grow_paths(edge_count, root, m, candidates);
    }
    candidates.push_back(identity);
    if (candidate_count) *candidate_count = candidates.size();

    auto score_of = [&](const std::vector<std::size_t>& order) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            s += pair_score[order[i]][order[i + 1]];
        }
        return s;
    };

    CliquePermutation best;
    bool have = false;
    for (const auto& cand : candidates) {
        const double s = score_of(cand);
        if (!have || s < best.score || (s == best.score && cand < best.order)) {
            best = {cand, s};
            have = true;
        }
    }
    return best;
}

std::string cover_report(const Hamiltonian& h, const CliqueCover& cover,
                         const CliquePermutation& perm) {
    std::ostringstream out;
    out << cover.cliques.size() << " cliques over " << h.num_terms() << " terms\n";
    for (std::size_t c = 0; c < cover.cliques.size(); ++c) {
        out << "clique " << c << ":";
        for (std::size_t v : cover.cliques[c]) {
            out << ' ' << h.terms[v].string.str();
        }
        out << '\n';
    }
    out << "order:";
    for (std::size_t c : perm.order) out << ' ' << c;
    out << "\nscore: " << perm.score << '\n';
    return out.str();
}

}  // namespace dqs
