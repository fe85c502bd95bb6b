#include "dqs/pauli.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace dqs;

TEST_CASE("parse keeps line order and merges duplicates") {
    const Hamiltonian h = parse_hamiltonian("0.0871 IIIZ\n-0.0243 IIZI");
    REQUIRE(h.num_terms() == 2);
    CHECK(h.width == 4);
    CHECK(h.terms[0].string.str() == "IIIZ");
    CHECK(h.terms[0].coefficient == doctest::Approx(0.0871));
    CHECK(h.terms[1].string.str() == "IIZI");
    CHECK(h.terms[1].coefficient == doctest::Approx(-0.0243));

    const Hamiltonian merged = parse_hamiltonian("0.5 XZ\n0.5 XZ");
    REQUIRE(merged.num_terms() == 1);
    CHECK(merged.terms[0].coefficient == doctest::Approx(1.0));
}

TEST_CASE("parse errors") {
    CHECK_THROWS(parse_hamiltonian("1.0 IIII"));       // identity excluded
    CHECK_THROWS(parse_hamiltonian(""));               // empty input
    CHECK_THROWS(parse_hamiltonian("# only comments\n"));
    CHECK_THROWS(parse_hamiltonian("abc XZ"));         // malformed coefficient
    CHECK_THROWS(parse_hamiltonian("1.0+2i XZ"));      // complex coefficient
    CHECK_THROWS(parse_hamiltonian("0.0 XZ"));         // zero coefficient
    CHECK_THROWS(parse_hamiltonian("1.0 XQ"));         // illegal character
    CHECK_THROWS(parse_hamiltonian("1.0 XZ\n1.0 XZZ"));  // width mismatch
    CHECK_THROWS(parse_hamiltonian("1.0 XZ extra"));
    // A merged coefficient of exactly zero drops the term, leaving nothing.
    CHECK_THROWS(parse_hamiltonian("0.5 XZ\n-0.5 XZ"));
}

TEST_CASE("parse tolerates comments and whitespace") {
    const Hamiltonian h = parse_hamiltonian("# header\n  0.25\tXZ  # inline\n\n -1 ZZ\n");
    REQUIRE(h.num_terms() == 2);
    CHECK(h.terms[0].string.str() == "XZ");
    CHECK(h.terms[1].coefficient == doctest::Approx(-1.0));
}

TEST_CASE("commutes on known pairs") {
    CHECK(commutes(PauliString("XX"), PauliString("YY")));
    CHECK(commutes(PauliString("ZZZZ"), PauliString("ZZZZ")));
    CHECK_FALSE(commutes(PauliString("X"), PauliString("Z")));
    CHECK_FALSE(commutes(PauliString("XZ"), PauliString("ZZ")));
    CHECK_FALSE(commutes(PauliString("XZZ"), PauliString("ZZZ")));
    CHECK(commutes(PauliString("ZI"), PauliString("IZ")));
    CHECK_THROWS(commutes(PauliString("XX"), PauliString("X")));
}

TEST_CASE("commutes matches the dense commutator oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t width = 1 + bounded_uint(rng, 5);
        const auto a = testutil::random_string(rng, width, true);
        const auto b = testutil::random_string(rng, width, true);
        const double norm =
            testutil::commutator_norm(testutil::kron_string(a), testutil::kron_string(b));
        CHECK(commutes(a, b) == (norm < 1e-12));
    }
}

TEST_CASE("commutes is symmetric") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t width = 1 + bounded_uint(rng, 6);
        const auto a = testutil::random_string(rng, width, true);
        const auto b = testutil::random_string(rng, width, true);
        CHECK(commutes(a, b) == commutes(b, a));
    }
}

TEST_CASE("hamming weight") {
    CHECK(hamming_weight(PauliString("XXXX")) == 4);
    CHECK(hamming_weight(PauliString("IIII")) == 0);
    CHECK(hamming_weight(PauliString("ZXIY")) == 3);
}

TEST_CASE("lexicographic character order is X < Y < Z < I") {
    CHECK(lex_less(PauliString("X"), PauliString("Y")));
    CHECK(lex_less(PauliString("Y"), PauliString("Z")));
    CHECK(lex_less(PauliString("Z"), PauliString("I")));
    CHECK_FALSE(lex_less(PauliString("I"), PauliString("X")));
    CHECK(lex_less(PauliString("XXXXXYYX"), PauliString("XXXXXIXZ")));
}

TEST_CASE("print/parse round-trip") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = testutil::random_hamiltonian(rng, 1 + bounded_uint(rng, 5),
                                                    1 + bounded_uint(rng, 10));
        const Hamiltonian back = parse_hamiltonian(print_hamiltonian(h));
        REQUIRE(back.num_terms() == h.num_terms());
        CHECK(back.width == h.width);
        for (std::size_t i = 0; i < h.num_terms(); ++i) {
            CHECK(back.terms[i].string == h.terms[i].string);
            CHECK(back.terms[i].coefficient == h.terms[i].coefficient);
        }
    }
}

TEST_CASE("fixture files load") {
    const auto h2 = load_hamiltonian_file(testutil::fixture("h2.ham"));
    CHECK(h2.num_terms() == 14);
    CHECK(h2.width == 4);

    const auto all = load_hamiltonian_dir(DQS_FIXTURES_DIR);
    CHECK(all.size() >= 6);
    bool found = false;
    for (const auto& [name, h] : all) {
        if (name == "deuteron") {
            found = true;
            CHECK(h.num_terms() == 4);
        }
    }
    CHECK(found);
    CHECK_THROWS(load_hamiltonian_file(testutil::fixture("missing.ham")));
}
