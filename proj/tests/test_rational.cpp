#include "wyang/rational.hpp"

#include <catch_amalgamated.hpp>

using wyang::Rational;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(6, -4);
    CHECK(a.to_fraction() == "-3/2");
    CHECK((a + Rational(3, 2)).is_zero());
    CHECK((a * Rational(-2, 3)).is_one());
    CHECK(Rational(5).to_fraction() == "5/1");
    CHECK(Rational(0).to_fraction() == "0/1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational promotes on overflow and demotes back") {
    Rational big(INT64_MAX);
    Rational sum = big + big;
    CHECK(sum.str() == "18446744073709551614");
    Rational back = sum - big;
    CHECK(back == big);
    CHECK(back.hash() == big.hash());
    Rational prod = big * big;
    CHECK((prod / big) == big);
    Rational frac(1, INT64_MAX);
    CHECK((frac * frac * big * big).is_one());
}

TEST_CASE("rational matches gmp on a random walk") {
    mpq_class ref(0);
    Rational r(0);
    long long seed = 12345;
    for (int step = 0; step < 2000; ++step) {
        seed = (seed * 6364136223846793005LL + 1442695040888963407LL);
        long long n = (seed >> 33) % 2001 - 1000;
        long long d = ((seed >> 13) & 1023) + 1;
        Rational x(n, d);
        mpq_class y(static_cast<long>(n), static_cast<long>(d));
        y.canonicalize();
        switch (step % 4) {
            case 0: r += x; ref += y; break;
            case 1: r -= x; ref -= y; break;
            case 2: if (n != 0) { r *= x; ref *= y; } break;
            default: if (n != 0) { r /= x; ref /= y; } break;
        }
        REQUIRE(r.to_mpq() == ref);
    }
}
