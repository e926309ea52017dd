#include "oracle.hpp"
#include "wyang/algebra.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wyang;

namespace {

oracle::Dense super_commutator(const oracle::Dense& a, int pa, const oracle::Dense& b, int pb) {
    return oracle::add(oracle::mul(a, b), oracle::mul(b, a), (pa && pb) ? 1 : -1);
}

std::vector<GenCode> random_word(std::mt19937& rng, const SuperAlgebra& A, int len) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(A.generator_count()) - 1);
    std::vector<GenCode> w;
    for (int k = 0; k < len; ++k) w.push_back(static_cast<GenCode>(pick(rng)));
    return w;
}

Element random_element(std::mt19937& rng, const SuperAlgebra& A) {
    std::uniform_int_distribution<int> coeff(-3, 3), len(0, 3);
    Element x;
    for (int t = 0; t < 3; ++t) x += A.word(random_word(rng, A, len(rng)), coeff(rng));
    return x;
}

}  // namespace

TEST_CASE("bracket table agrees with matrix supercommutators") {
    for (auto [M, N] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
        SuperAlgebra A(M, N);
        auto nat = oracle::natural(M, N);
        for (GenCode a = 0; a < A.generator_count(); ++a)
            for (GenCode b = 0; b < A.generator_count(); ++b) {
                Element br = A.bracket_basis(A.generator(a), A.generator(b));
                auto [p, q] = A.positions(a);
                auto [h, k] = A.positions(b);
                REQUIRE(oracle::evaluate(br, A, nat) ==
                        super_commutator(nat(p, q), A.parity(a), nat(h, k), A.parity(b)));
            }
    }
}

TEST_CASE("normal ordering is an algebra map in two representations") {
    std::mt19937 rng(7);
    for (auto [M, N] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
        std::vector<int> cols;
        for (int p = 0; p < M + N; ++p) cols.push_back(1 + p % 2);
        SuperAlgebra A(M, N, cols);
        auto nat = oracle::natural(M, N);
        auto sq = oracle::tensor_square(M, N);
        for (int trial = 0; trial < 40; ++trial) {
            auto w = random_word(rng, A, 1 + trial % 5);
            Element x = A.word(w);
            for (const auto* rep : {&nat, &sq}) {
                oracle::Dense expect = oracle::identity(rep->unit[0].size());
                for (GenCode g : w) {
                    auto [p, q] = A.positions(g);
                    expect = oracle::mul(expect, (*rep)(p, q));
                }
                REQUIRE(oracle::evaluate(x, A, *rep) == expect);
            }
        }
    }
}

TEST_CASE("normal forms are sorted and odd squares vanish") {
    SuperAlgebra A(1, 2);
    GenCode odd = A.code(0, 1);
    CHECK(A.word({odd, odd}).is_zero());
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Element x = A.word(random_word(rng, A, 4));
        for (const auto& [m, c] : x.terms()) {
            REQUIRE(std::is_sorted(m.codes.begin(), m.codes.end()));
            for (std::size_t k = 1; k < m.codes.size(); ++k)
                if (m.codes[k] == m.codes[k - 1]) REQUIRE(A.parity(m.codes[k]) == 0);
        }
    }
}

TEST_CASE("multiplication is associative and the bracket satisfies super Jacobi") {
    std::mt19937 rng(11);
    SuperAlgebra A(1, 1, {1, 2});
    for (int trial = 0; trial < 15; ++trial) {
        Element x = random_element(rng, A), y = random_element(rng, A), z = random_element(rng, A);
        REQUIRE(A.multiply(A.multiply(x, y), z) == A.multiply(x, A.multiply(y, z)));
    }
    for (GenCode a = 0; a < A.generator_count(); ++a)
        for (GenCode b = 0; b < A.generator_count(); ++b)
            for (GenCode c = 0; c < A.generator_count(); ++c) {
                Element x = A.unit(A.generator(a)), y = A.unit(A.generator(b)), z = A.unit(A.generator(c));
                int pa = A.parity(a), pb = A.parity(b), pc = A.parity(c);
                Element lhs = A.bracket(x, A.bracket(y, z));
                Element rhs = A.bracket(A.bracket(x, y), z) + A.bracket(y, A.bracket(x, z)) * Rational((pa * pb) % 2 ? -1 : 1);
                REQUIRE(lhs == rhs);
                (void)pc;
            }
}

TEST_CASE("generator codes follow the two-group order") {
    SuperAlgebra A(1, 1, {2, 1});
    // positions: 0 in column 2, 1 in column 1
    CHECK(A.code(0, 0) < A.code(1, 0));
    CHECK(A.in_lower(A.code(0, 1)));
    CHECK_FALSE(A.in_lower(A.code(1, 0)));
    CHECK(A.degree(A.code(1, 0)) == 2);
    CHECK(A.degree(A.code(0, 1)) == 0);
    CHECK(A.generator(A.code(0, 1)).row == BasisIndex::bar(1));
    CHECK(BasisIndex::parse("b3") == BasisIndex::bar(3));
    CHECK(BasisIndex::plain(2).str() == "2");
}
