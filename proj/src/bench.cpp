#include "dqs/bench.hpp"

#include "dqs/rng.hpp"
#include "dqs/tsp.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dqs {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace

std::vector<double> BenchConfig::t_grid() const {
    if (t_steps == 0) throw std::runtime_error("config: t_steps must be positive");
    std::vector<double> grid(t_steps);
    if (t_steps == 1) {
        grid[0] = 0.0;
        return grid;
    }
    for (std::size_t i = 0; i < t_steps; ++i) {
        grid[i] = t_max * static_cast<double>(i) / static_cast<double>(t_steps - 1);
    }
    return grid;
}

void apply_config_file(BenchConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                         ": expected key=value");
            }
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "hamiltonians") cfg.hamiltonians = split_list(value);
            else if (key == "strategies") cfg.strategies = split_list(value);
            else if (key == "t_max") cfg.t_max = std::stod(value);
            else if (key == "t_steps") cfg.t_steps = std::stoul(value);
            else if (key == "t") cfg.t = std::stod(value);
            else if (key == "r") cfg.r = std::stoi(value);
            else if (key == "arch") cfg.arch = parse_arch(value);
            else if (key == "noise_ps") {
                cfg.noise_ps.clear();
                for (const auto& s : split_list(value)) cfg.noise_ps.push_back(std::stod(s));
            } else if (key == "shots") cfg.shots = std::stoull(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "initial_state") cfg.initial_state = value;
            else if (key == "out_dir") cfg.out_dir = value;
            else if (key == "enumerate_perms") cfg.enumerate_perms = (value == "true" || value == "1");
            else if (key == "dump_tsp") cfg.dump_tsp = (value == "true" || value == "1");
            else if (key == "dump_distributions") cfg.dump_distributions = (value == "true" || value == "1");
            else throw std::runtime_error("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": bad value for '" + key + "'");
        }
    }
    if (cfg.r < 1) throw std::runtime_error("config: r must be >= 1");
    if (cfg.shots < 1) throw std::runtime_error("config: shots must be >= 1");
}

std::vector<std::pair<std::string, Hamiltonian>> load_benchmarks(const BenchConfig& cfg) {
    namespace fs = std::filesystem;
    if (cfg.hamiltonians.empty()) {
        throw std::runtime_error("no Hamiltonian files configured");
    }
    std::vector<std::pair<std::string, Hamiltonian>> out;
    for (const auto& path : cfg.hamiltonians) {
        if (fs::is_directory(path)) {
            auto dir = load_hamiltonian_dir(path);
            out.insert(out.end(), std::make_move_iterator(dir.begin()),
                       std::make_move_iterator(dir.end()));
        } else {
            out.emplace_back(fs::path(path).stem().string(), load_hamiltonian_file(path));
        }
    }
    return out;
}

namespace {

struct CoverBundle {
    CliqueCover cover;
    CliquePermutation perm;
};

CoverBundle cover_for(const Hamiltonian& h) {
    const CommutationGraph g = build_graph(h);
    const CoverMode mode =
        h.num_terms() <= kExactCoverCeiling ? CoverMode::Exact : CoverMode::Greedy;
    CoverBundle out;
    out.cover = min_clique_cover(g, mode);
    out.perm = permutation_heuristic(h, out.cover);
    return out;
}

}  // namespace

OrderingPlan make_plan(const Hamiltonian& h, const std::string& strategy,
                       const BenchConfig& cfg, PlanDiagnostics* diag) {
    auto with_cover = [&](IntraOrder intra) {
        const CoverBundle bundle = cover_for(h);
        if (diag) {
            diag->num_cliques = bundle.cover.cliques.size();
            if (cfg.dump_tsp) diag->cover_text = cover_report(h, bundle.cover, bundle.perm);
        }
        return order_max_commute(h, bundle.cover, bundle.perm, intra);
    };
    if (strategy == "unordered") return order_unordered(h);
    if (strategy == "lexicographic" || strategy == "lex") return order_lexicographic(h);
    if (strategy == "magnitude" || strategy == "mag") return order_magnitude(h);
    if (strategy == "random") return order_random(h, cfg.seed);
    if (strategy == "deplete_groups") {
        const CoverBundle bundle = cover_for(h);
        if (diag) diag->num_cliques = bundle.cover.cliques.size();
        return order_deplete_groups(h, bundle.cover);
    }
    if (strategy == "max_commute_lex") return with_cover(IntraOrder::Lex);
    if (strategy == "max_commute_tsp") return with_cover(IntraOrder::TspExact);
    if (strategy == "max_commute_tsp_approx") return with_cover(IntraOrder::TspApprox);
    if (strategy == "tsp") return order_tsp(h, true);
    if (strategy == "tsp_approx") return order_tsp(h, false);
    throw std::runtime_error("unknown strategy '" + strategy + "'");
}

std::vector<Gate> initial_state_gates(const std::string& tag, int n) {
    if (n < 1) throw std::runtime_error("initial state needs at least one qubit");
    std::vector<Gate> gates;
    if (tag == "equal_superposition") {
        for (int q = 0; q < n; ++q) gates.push_back(Gate::h(q));
        return gates;
    }
    if (tag == "entangled_pair" || tag == "complex") {
        if (n < 2) throw std::runtime_error("'" + tag + "' needs at least two qubits");
        gates.push_back(Gate::h(0));
        gates.push_back(Gate::cnot(0, 1));
        for (int q = 2; q < n; ++q) gates.push_back(Gate::x(q));
        for (int q = 2; q < n; ++q) gates.push_back(Gate::cnot(0, q));
        if (tag == "complex") {
            if (n < 4) throw std::runtime_error("'complex' needs at least four qubits");
            gates.push_back(Gate::h(2));
            gates.push_back(Gate::s(3));
        }
        return gates;
    }
    throw std::runtime_error("unknown initial state '" + tag + "'");
}

StateVector build_initial_state(const std::string& tag, int n) {
    return run_gates(initial_state_gates(tag, n), n);
}

namespace {

// Predicted post-cancellation CNOT count of the star+ancilla circuit for
// one pass through the plan order.
long long predicted_cnots(const Hamiltonian& h, const OrderingPlan& plan) {
    std::vector<PauliString> strings;
    strings.reserve(h.num_terms());
    for (const auto& term : h.terms) strings.push_back(term.string);
    return path_total_cnots(plan.term_order, strings);
}

long long cnot_upper_bound(const Hamiltonian& h) {
    long long total = 0;
    for (const auto& term : h.terms) {
        total += 2 * static_cast<long long>(hamming_weight(term.string));
    }
    return total;
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

std::filesystem::path out_path(const BenchConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / name;
}

}  // namespace

namespace {

// Distance matrices and path solutions for the segments of a plan: the
// whole term set when no boundaries are present, per-clique otherwise.
std::string tsp_dump_text(const Hamiltonian& h, const OrderingPlan& plan) {
    std::ostringstream out;
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    if (plan.clique_boundaries.empty()) {
        segments.emplace_back(0, plan.term_order.size());
    } else {
        std::size_t start = 0;
        for (std::size_t b : plan.clique_boundaries) {
            segments.emplace_back(start, b);
            start = b;
        }
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto [begin, end] = segments[s];
        std::vector<PauliString> strings;
        for (std::size_t i = begin; i < end; ++i) {
            strings.push_back(h.terms[plan.term_order[i]].string);
        }
        out << "segment " << s << " (" << strings.size() << " strings)\n";
        const DistanceMatrix m = build_distance_matrix(strings);
        out << dump_matrix(m);
        std::vector<std::size_t> as_laid_out(strings.size());
        std::iota(as_laid_out.begin(), as_laid_out.end(), 0);
        PathSolution sol;
        sol.order = as_laid_out;
        for (std::size_t i = 0; i + 1 < as_laid_out.size(); ++i) sol.transition_cost += m.at(i, i + 1);
        sol.total_cnots = sol.transition_cost + m.node_weights.front() + m.node_weights.back();
        out << dump_solution(sol);
    }
    return out.str();
}

}  // namespace

std::vector<std::string> cmd_order(const BenchConfig& cfg) {
    const auto benchmarks = load_benchmarks(cfg);
    std::ostringstream csv;
    csv << "hamiltonian,strategy,terms,width,cliques,cnot_upper_bound,cnot_predicted,"
           "permutation,boundaries\n";
    std::vector<std::string> written;
    for (const auto& [name, h] : benchmarks) {
        for (const auto& strategy : cfg.strategies) {
            PlanDiagnostics diag;
            const OrderingPlan plan = make_plan(h, strategy, cfg, &diag);
            csv << name << ',' << plan.strategy << ',' << h.num_terms() << ',' << h.width
                << ',' << (diag.num_cliques ? std::to_string(diag.num_cliques) : std::string())
                << ',' << cnot_upper_bound(h) << ',' << predicted_cnots(h, plan) << ','
                << join_indices(plan.term_order) << ',' << join_indices(plan.clique_boundaries)
                << '\n';
            if (cfg.dump_tsp) {
                std::string text = diag.cover_text;
                text += tsp_dump_text(h, plan);
                const auto path = out_path(cfg, name + "_" + strategy + "_tsp.txt");
                write_file(path.string(), text);
                written.push_back(path.string());
            }
        }
    }
    const auto path = out_path(cfg, "order.csv");
    write_file(path.string(), csv.str());
    written.push_back(path.string());
    return written;
}

std::vector<std::string> cmd_compile(const BenchConfig& cfg) {
    const auto benchmarks = load_benchmarks(cfg);
    std::ostringstream csv;
    csv << "hamiltonian,strategy,width,r,t,cnots_pre,cnots_post,reduction_pct,circuit_file\n";
    std::vector<std::string> written;
    for (const auto& [name, h] : benchmarks) {
        for (const auto& strategy : cfg.strategies) {
            const OrderingPlan plan = make_plan(h, strategy, cfg);
            const Circuit raw = assemble(plan, h, cfg.t, cfg.r, cfg.arch);
            const Circuit optimized = cancel_gates(raw);
            const std::size_t pre = cnot_count(raw);
            const std::size_t post = cnot_count(optimized);
            const double reduction =
                pre == 0 ? 0.0
                         : 100.0 * static_cast<double>(pre - post) / static_cast<double>(pre);
            const std::string circuit_name = name + "_" + strategy + ".circuit";
            const auto circuit_path = out_path(cfg, circuit_name);
            write_file(circuit_path.string(), circuit_to_string(optimized));
            written.push_back(circuit_path.string());
            csv << name << ',' << plan.strategy << ',' << optimized.num_qubits << ','
                << cfg.r << ',' << fmt(cfg.t) << ',' << pre << ',' << post << ','
                << fmt(reduction) << ',' << circuit_name << '\n';
        }
    }
    const auto path = out_path(cfg, "compile.csv");
    write_file(path.string(), csv.str());
    written.push_back(path.string());
    return written;
}

namespace {

void fidelity_rows(const Hamiltonian& h, const std::string& name, const std::string& strategy,
                   const OrderingPlan& plan, const BenchConfig& cfg, std::ostringstream& csv,
                   std::ostringstream& summary) {
    const auto grid = cfg.t_grid();
    std::vector<std::pair<double, double>> samples;
    samples.reserve(grid.size());
    for (double t : grid) {
        const DenseUnitary exact = exact_unitary(h, t);
        const Circuit circuit = assemble(plan, h, t, cfg.r, cfg.arch);
        const double f = process_fidelity(exact, circuit_unitary(circuit));
        samples.emplace_back(t, f);
        csv << name << ',' << strategy << ',' << fmt(t) << ',' << fmt(f) << '\n';
    }
    const double t_end = grid.back();
    if (t_end > 0.0) {
        summary << name << ',' << strategy << ',' << fmt(t_end) << ','
                << fmt(normalized_fidelity(samples, t_end)) << '\n';
    }
}

}  // namespace

std::vector<std::string> cmd_fidelity(const BenchConfig& cfg) {
    const auto benchmarks = load_benchmarks(cfg);
    std::ostringstream csv, summary;
    csv << "hamiltonian,strategy,t,process_fidelity\n";
    summary << "hamiltonian,strategy,t_end,normalized_fidelity\n";
    for (const auto& [name, h] : benchmarks) {
        for (const auto& strategy : cfg.strategies) {
            const OrderingPlan plan = make_plan(h, strategy, cfg);
            fidelity_rows(h, name, plan.strategy, plan, cfg, csv, summary);
        }
        if (cfg.enumerate_perms) {
            const CommutationGraph g = build_graph(h);
            const CoverMode mode =
                h.num_terms() <= kExactCoverCeiling ? CoverMode::Exact : CoverMode::Greedy;
            const CliqueCover cover = min_clique_cover(g, mode);
            std::vector<std::size_t> order(cover.cliques.size());
            std::iota(order.begin(), order.end(), 0);
            std::size_t count = 1;
            for (std::size_t i = 2; i <= order.size(); ++i) count *= i;
            if (count > 720) {
                throw std::runtime_error("permutation enumeration limited to 6 cliques (" +
                                         std::to_string(order.size()) + " found)");
            }
            do {
                const OrderingPlan plan =
                    order_max_commute(h, cover, {order, permutation_score(h, cover, order)},
                                      IntraOrder::TspExact);
                fidelity_rows(h, name, "perm:" + join_indices(order), plan, cfg, csv, summary);
            } while (std::next_permutation(order.begin(), order.end()));
        }
    }
    const auto path = out_path(cfg, "fidelity.csv");
    const auto sum_path = out_path(cfg, "fidelity_summary.csv");
    write_file(path.string(), csv.str());
    write_file(sum_path.string(), summary.str());
    return {path.string(), sum_path.string()};
}

std::vector<std::string> cmd_noisy(const BenchConfig& cfg) {
    const auto benchmarks = load_benchmarks(cfg);
    std::ostringstream csv;
    csv << "hamiltonian,strategy,initial_state,p,shots,seed,generator,cnots_pre,cnots_post,"
           "hellinger_distance,hellinger_infidelity\n";
    std::vector<std::string> written;
    for (const auto& [name, h] : benchmarks) {
        const StateVector initial = build_initial_state(cfg.initial_state, static_cast<int>(h.width));

        // Reference: Born distribution of the exact evolution.
        const DenseUnitary exact = exact_unitary(h, cfg.t);
        const StateVector evolved = exact * initial;
        const std::vector<double> reference = born_probabilities(evolved);

        for (const auto& strategy : cfg.strategies) {
            const OrderingPlan plan = make_plan(h, strategy, cfg);
            const Circuit raw = assemble(plan, h, cfg.t, cfg.r, cfg.arch);
            const Circuit circuit = cancel_gates(raw);
            for (double p : cfg.noise_ps) {
                const NoiseConfig noise{p, cfg.shots, cfg.seed};
                const ShotDistribution dist = run_noisy(circuit, initial, noise);
                const HellingerResult hd = hellinger(reference, dist.probabilities());
                SimReport report;
                report.hamiltonian = name;
                report.strategy = plan.strategy;
                report.generator = kGeneratorName;
                report.seed = noise.seed;
                report.cnots_pre = cnot_count(raw);
                report.cnots_post = cnot_count(circuit);
                report.hellinger_distance = hd.distance;
                report.hellinger_infidelity = hd.infidelity;
                csv << report.hamiltonian << ',' << report.strategy << ','
                    << cfg.initial_state << ',' << fmt(p) << ',' << cfg.shots << ','
                    << report.seed << ',' << report.generator << ',' << report.cnots_pre
                    << ',' << report.cnots_post << ',' << fmt(report.hellinger_distance)
                    << ',' << fmt(report.hellinger_infidelity) << '\n';
                if (cfg.dump_distributions) {
                    const auto dist_path =
                        out_path(cfg, name + "_" + strategy + "_p" + fmt(p) + ".csv");
                    write_file(dist_path.string(),
                               distribution_csv(dist, static_cast<int>(h.width)));
                    written.push_back(dist_path.string());
                }
            }
        }
    }
    const auto path = out_path(cfg, "noisy.csv");
    write_file(path.string(), csv.str());
    written.push_back(path.string());
    return written;
}

}  // namespace dqs
