#include "dqs/sim.hpp"

#include "dqs/bench.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace dqs;

namespace {

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Largest entrywise difference after aligning global phase.
double max_diff_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const std::complex<double> tr = (a.adjoint() * b).trace();
    const std::complex<double> phase = tr / std::abs(tr);
    return (a * phase - b).cwiseAbs().maxCoeff();
}

Hamiltonian family_hamiltonian(const std::vector<PauliString>& strings,
                               const std::vector<double>& coeffs) {
    Hamiltonian h;
    h.width = strings.front().size();
    for (std::size_t i = 0; i < strings.size(); ++i) {
        h.terms.push_back({coeffs[i], strings[i]});
    }
    return h;
}

}  // namespace

TEST_CASE("hamiltonian_matrix matches the Kronecker oracle") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const auto h = testutil::random_hamiltonian(rng, 1 + bounded_uint(rng, 3),
                                                    1 + bounded_uint(rng, 5));
        const Eigen::MatrixXcd built = hamiltonian_matrix(h);
        const std::size_t dim = std::size_t{1} << h.width;
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                std::complex<double> want{0.0, 0.0};
                for (const auto& term : h.terms) {
                    want += term.coefficient * testutil::kron_string(term.string)[r][c];
                }
                CHECK(std::abs(built(r, c) - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("exact unitary basics") {
    const Hamiltonian h = parse_hamiltonian("1.0 Z");
    const DenseUnitary at_zero = exact_unitary(h, 0.0);
    CHECK(max_diff(at_zero, Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);

    const double t = 0.83;
    const DenseUnitary u = exact_unitary(h, t);
    CHECK(std::abs(u(0, 0) - std::exp(std::complex<double>(0, -t))) < 1e-12);
    CHECK(std::abs(u(1, 1) - std::exp(std::complex<double>(0, t))) < 1e-12);
    CHECK(std::abs(u(0, 1)) < 1e-14);

    Hamiltonian wide;
    wide.width = 12;
    wide.terms.push_back({1.0, PauliString(std::string(12, 'Z'))});
    CHECK_THROWS(exact_unitary(wide, 1.0));
}

TEST_CASE("circuit unitary of the ZZ sub-circuit equals the exponential") {
    const Hamiltonian h = parse_hamiltonian("1.0 ZZ");
    const double t = 1.37;
    const Circuit c = assemble(order_unordered(h), h, t, 1, EntanglerArch::Ladder);
    CHECK(max_diff(circuit_unitary(c), exact_unitary(h, t)) < 1e-12);

    Circuit empty;
    empty.num_qubits = empty.num_data = 2;
    CHECK(max_diff(circuit_unitary(empty), Eigen::MatrixXcd::Identity(4, 4)) < 1e-15);
}

TEST_CASE("matrix route agrees with the statevector kernel on basis inputs") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        // Random 3-qubit gate list.
        std::vector<Gate> gates;
        for (int i = 0; i < 30; ++i) {
            const int q = static_cast<int>(bounded_uint(rng, 3));
            switch (bounded_uint(rng, 6)) {
                case 0: gates.push_back(Gate::h(q)); break;
                case 1: gates.push_back(Gate::s(q)); break;
                case 2: gates.push_back(Gate::sdag(q)); break;
                case 3: gates.push_back(Gate::x(q)); break;
                case 4: gates.push_back(Gate::rz(2.0 * canonical_double(rng) - 1.0, q)); break;
                default: {
                    const int other = (q + 1 + static_cast<int>(bounded_uint(rng, 2))) % 3;
                    gates.push_back(Gate::cnot(q, other));
                }
            }
        }
        Circuit c;
        c.num_qubits = c.num_data = 3;
        c.gates = gates;
        const DenseUnitary u = circuit_unitary(c);
        for (std::size_t basis = 0; basis < 8; ++basis) {
            StateVector state = StateVector::Zero(8);
            state(basis) = 1.0;
            for (const Gate& g : gates) apply_gate(state, g, 3);
            CHECK((u.col(basis) - state).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("ancilla block equals the ladder unitary up to global phase") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 15; ++trial) {
        const auto h = testutil::random_hamiltonian(rng, 2 + bounded_uint(rng, 2),
                                                    2 + bounded_uint(rng, 5));
        const auto plan = order_random(h, trial);
        const double t = 0.4 + canonical_double(rng);
        const Circuit ladder = assemble(plan, h, t, 2, EntanglerArch::Ladder);
        const Circuit anc = assemble(plan, h, t, 2, EntanglerArch::StarAncilla);
        CHECK(max_diff_up_to_phase(circuit_unitary(ladder), circuit_unitary(anc)) < 1e-10);
    }
}

TEST_CASE("process fidelity") {
    const Hamiltonian h = parse_hamiltonian("0.7 XZ\n-0.3 ZY");
    const DenseUnitary u = exact_unitary(h, 0.9);
    CHECK(process_fidelity(u, u) == doctest::Approx(1.0));

    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd phased = std::complex<double>(0, 1) * eye;
    CHECK(process_fidelity(eye, phased) == doctest::Approx(1.0));

    CHECK_THROWS(process_fidelity(eye, Eigen::MatrixXcd::Identity(2, 2)));

    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = testutil::random_hamiltonian(rng, 2, 4);
        const auto b = testutil::random_hamiltonian(rng, 2, 4);
        const double f = process_fidelity(exact_unitary(a, 1.0), exact_unitary(b, 1.0));
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
    }
}

TEST_CASE("normalized fidelity quadrature") {
    std::vector<std::pair<double, double>> flat;
    for (int i = 0; i <= 100; ++i) flat.emplace_back(i * 0.01, 1.0);
    CHECK(normalized_fidelity(flat, 1.0) == doctest::Approx(1.0));

    std::vector<std::pair<double, double>> constant;
    for (int i = 0; i <= 100; ++i) constant.emplace_back(i * 0.01, 0.42);
    CHECK(normalized_fidelity(constant, 1.0) == doctest::Approx(0.42));

    std::vector<std::pair<double, double>> ramp;
    for (int i = 0; i <= 100; ++i) ramp.emplace_back(i * 0.01, i * 0.01);
    CHECK(normalized_fidelity(ramp, 1.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(normalized_fidelity(ramp, 0.5) == doctest::Approx(0.25).epsilon(1e-6));

    CHECK_THROWS(normalized_fidelity({}, 1.0));
    CHECK_THROWS(normalized_fidelity(ramp, 2.0));
}

TEST_CASE("operator norm") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = -1.0;
    CHECK(operator_norm(m) == doctest::Approx(3.0));
    CHECK(operator_norm(Eigen::MatrixXcd::Zero(4, 4)) == doctest::Approx(0.0));
}

TEST_CASE("hellinger distance and infidelity") {
    const auto same = hellinger({0.25, 0.75}, {0.25, 0.75});
    CHECK(same.distance == doctest::Approx(0.0));
    CHECK(same.infidelity == doctest::Approx(0.0));

    const auto disjoint = hellinger({1.0, 0.0}, {0.0, 1.0});
    CHECK(disjoint.distance == doctest::Approx(1.0));
    CHECK(disjoint.infidelity == doctest::Approx(1.0));

    const auto skew = hellinger({1.0, 0.0}, {0.5, 0.5});
    CHECK(skew.distance == doctest::Approx(std::sqrt(1.0 - 1.0 / std::sqrt(2.0))));

    CHECK_THROWS(hellinger({0.5, 0.4}, {0.5, 0.5}));
    CHECK_THROWS(hellinger({1.0}, {0.5, 0.5}));
}

TEST_CASE("noiseless shots reproduce the circuit's Born distribution") {
    const Hamiltonian h = load_hamiltonian_file(testutil::fixture("hc.ham"));
    const Circuit c =
        cancel_gates(assemble(order_magnitude(h), h, 0.8, 2, EntanglerArch::StarAncilla));
    const StateVector initial = build_initial_state("equal_superposition", 2);

    // Reference through the independent statevector kernel.
    StateVector full = StateVector::Zero(8);
    for (int i = 0; i < 4; ++i) full(2 * i) = initial(i);
    for (const Gate& g : c.gates) apply_gate(full, g, 3);
    std::vector<double> expected(4, 0.0);
    for (int i = 0; i < 8; ++i) expected[i >> 1] += std::norm(full(i));

    const NoiseConfig noise{0.0, 20000, 77};
    const ShotDistribution dist = run_noisy(c, initial, noise);
    const auto probs = dist.probabilities();
    double tvd = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) tvd += std::abs(probs[i] - expected[i]);
    tvd *= 0.5;
    CHECK(tvd < 0.02);

    // Determinism per seed.
    const ShotDistribution again = run_noisy(c, initial, noise);
    CHECK(again.counts == dist.counts);
}

TEST_CASE("full depolarization drives a deep circuit to the uniform distribution") {
    const Hamiltonian h = parse_hamiltonian("1 ZZZ\n1 XXI\n1 IYY");
    const Circuit c = assemble(order_unordered(h), h, 1.0, 2, EntanglerArch::Ladder);
    const StateVector initial = build_initial_state("entangled_pair", 3);
    const NoiseConfig noise{1.0, 16384, 13};
    const ShotDistribution dist = run_noisy(c, initial, noise);

    // Chi-square against uniform over 8 cells; dof 7, alpha ~ 1e-3 cutoff 24.3.
    const double expected = static_cast<double>(noise.shots) / 8.0;
    double chi2 = 0.0;
    for (std::uint64_t count : dist.counts) {
        const double d = static_cast<double>(count) - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 24.3);
}

TEST_CASE("noise probability is validated") {
    const Hamiltonian h = parse_hamiltonian("1 ZZ");
    const Circuit c = assemble(order_unordered(h), h, 1.0, 1, EntanglerArch::Ladder);
    const StateVector initial = build_initial_state("equal_superposition", 2);
    CHECK_THROWS(run_noisy(c, initial, NoiseConfig{-0.1, 10, 1}));
    CHECK_THROWS(run_noisy(c, initial, NoiseConfig{1.1, 10, 1}));
}

TEST_CASE("commuting exponentials factor exactly") {
    std::mt19937_64 rng(113);
    int done = 0;
    while (done < 60) {
        const std::size_t width = 2 + bounded_uint(rng, 2);
        const auto family = testutil::random_commuting_family(rng, width, 4);
        if (family.size() < 4) continue;
        ++done;
        std::vector<double> coeffs;
        for (int i = 0; i < 4; ++i) coeffs.push_back(2.0 * canonical_double(rng) - 1.0);
        const Hamiltonian a = family_hamiltonian({family[0], family[1]}, {coeffs[0], coeffs[1]});
        const Hamiltonian b = family_hamiltonian({family[2], family[3]}, {coeffs[2], coeffs[3]});
        Hamiltonian sum = a;
        for (const auto& term : b.terms) sum.terms.push_back(term);

        const double t = 0.3 + canonical_double(rng);
        const DenseUnitary lhs = exact_unitary(sum, t);
        const DenseUnitary rhs = exact_unitary(a, t) * exact_unitary(b, t);
        CHECK(max_diff(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("single-family circuits are exact at every time") {
    std::mt19937_64 rng(127);
    int done = 0;
    while (done < 20) {
        const std::size_t width = 2 + bounded_uint(rng, 2);
        const auto family = testutil::random_commuting_family(rng, width, 3);
        if (family.size() < 3) continue;
        ++done;
        std::vector<double> coeffs;
        for (int i = 0; i < 3; ++i) coeffs.push_back(2.0 * canonical_double(rng) - 1.0);
        const Hamiltonian h = family_hamiltonian(family, coeffs);
        for (double t : {0.5, 1.7, 4.2}) {
            const Circuit c = assemble(order_unordered(h), h, t, 1, EntanglerArch::Ladder);
            CHECK(process_fidelity(exact_unitary(h, t), circuit_unitary(c)) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("reordering inside a commuting family leaves the unitary unchanged") {
    std::mt19937_64 rng(131);
    int done = 0;
    while (done < 20) {
        const std::size_t width = 2 + bounded_uint(rng, 3);
        const auto family = testutil::random_commuting_family(rng, width, 4);
        if (family.size() < 4) continue;
        ++done;
        std::vector<double> coeffs;
        for (int i = 0; i < 4; ++i) coeffs.push_back(2.0 * canonical_double(rng) - 1.0);
        const Hamiltonian h = family_hamiltonian(family, coeffs);
        const auto base = order_unordered(h);
        const auto shuffled = order_random(h, 1000 + done);
        const double t = 0.4 + canonical_double(rng);
        const DenseUnitary a = circuit_unitary(assemble(base, h, t, 1, EntanglerArch::Ladder));
        const DenseUnitary b =
            circuit_unitary(assemble(shuffled, h, t, 1, EntanglerArch::Ladder));
        CHECK(max_diff(a, b) < 1e-10);
    }
}

TEST_CASE("first-order error halves when the step count doubles") {
    std::mt19937_64 rng(137);
    int done = 0;
    while (done < 6) {
        const auto h = testutil::random_hamiltonian(rng, 3, 4);
        bool noncommuting = false;
        for (std::size_t i = 0; i < h.num_terms() && !noncommuting; ++i) {
            for (std::size_t j = i + 1; j < h.num_terms(); ++j) {
                if (!commutes(h.terms[i].string, h.terms[j].string)) {
                    noncommuting = true;
                    break;
                }
            }
        }
        if (!noncommuting) continue;

        const double t = 1.0;
        const DenseUnitary exact = exact_unitary(h, t);
        auto err = [&](int r) {
            const Circuit c = assemble(order_unordered(h), h, t, r, EntanglerArch::Ladder);
            return operator_norm(circuit_unitary(c) - exact);
        };
        const double e8 = err(8);
        if (e8 < 1e-5) continue;  // nearly commuting draw; ratio would be noise
        ++done;
        double ratio_sum = 0.0;
        double prev = e8;
        for (int r : {16, 32, 64}) {
            const double next = err(r);
            ratio_sum += prev / next;
            prev = next;
        }
        const double mean_ratio = ratio_sum / 3.0;
        CHECK(mean_ratio > 1.6);
        CHECK(mean_ratio < 2.4);
    }
}

TEST_CASE("distribution CSV lists every bitstring") {
    ShotDistribution d;
    d.counts = {3, 1, 0, 0};
    d.shots = 4;
    const std::string csv = distribution_csv(d, 2);
    CHECK(csv.find("bitstring,count,probability") != std::string::npos);
    CHECK(csv.find("00,3,0.75") != std::string::npos);
    CHECK(csv.find("01,1,0.25") != std::string::npos);
    CHECK(csv.find("11,0,0") != std::string::npos);
}
