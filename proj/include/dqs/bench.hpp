#pragma once

#include "dqs/circuit.hpp"
#include "dqs/clique.hpp"
#include "dqs/ordering.hpp"
#include "dqs/sim.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dqs {

// Flat key=value configuration with flag overrides on top. Defaults:
// fidelity time grid 0..2.5 in 101 points, r = 10, shots = 1000.
struct BenchConfig {
    std::vector<std::string> hamiltonians;  // .ham files or directories of them
    std::vector<std::string> strategies = {"lexicographic", "magnitude", "max_commute_tsp"};
    double t_max = 2.5;
    std::size_t t_steps = 101;
    double t = 1.0;  // single evolution time for compile/noisy
    int r = 10;
    EntanglerArch arch = EntanglerArch::StarAncilla;
    std::vector<double> noise_ps = {0.001, 0.005, 0.01, 0.02};
    std::uint64_t shots = 1000;
    std::uint64_t seed = 12345;
    std::string initial_state = "entangled_pair";
    std::string out_dir = ".";
    bool enumerate_perms = false;
    bool dump_tsp = false;
    bool dump_distributions = false;

    std::vector<double> t_grid() const;
};

// Reads key=value lines ('#' comments); unknown keys are an error.
void apply_config_file(BenchConfig& cfg, const std::string& path);

// Expands files/directories into (name, hamiltonian) pairs.
std::vector<std::pair<std::string, Hamiltonian>> load_benchmarks(const BenchConfig& cfg);

// The known strategy spellings: unordered, lexicographic, magnitude,
// random, deplete_groups, max_commute_lex, max_commute_tsp,
// max_commute_tsp_approx.
struct PlanDiagnostics {
    std::size_t num_cliques = 0;
    std::string cover_text;  // populated when dump_tsp is on
};

OrderingPlan make_plan(const Hamiltonian& h, const std::string& strategy,
                       const BenchConfig& cfg, PlanDiagnostics* diag = nullptr);

// Initial-state builder circuits over n data qubits.
//   entangled_pair:      H(0), CNOT(0,1), then X and CNOT(0,q) on the rest;
//                        on 4 qubits this is (|0011> + |1100>)/sqrt(2).
//   equal_superposition: H on every qubit.
//   complex:             entangled_pair followed by H(2), S(3).
std::vector<Gate> initial_state_gates(const std::string& tag, int n);
StateVector build_initial_state(const std::string& tag, int n);

// Subcommand drivers; each writes CSV (and circuit/diagnostic files) under
// cfg.out_dir and returns the paths written.
std::vector<std::string> cmd_order(const BenchConfig& cfg);
std::vector<std::string> cmd_compile(const BenchConfig& cfg);
std::vector<std::string> cmd_fidelity(const BenchConfig& cfg);
std::vector<std::string> cmd_noisy(const BenchConfig& cfg);

}  // namespace dqs
