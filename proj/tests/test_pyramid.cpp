#include "fixtures.hpp"
#include "oracle.hpp"
#include "wyang/pyramid.hpp"

#include <catch_amalgamated.hpp>

using namespace wyang;

namespace {

BasisIndex B(int k) { return BasisIndex::bar(k); }
BasisIndex P(int k) { return BasisIndex::plain(k); }

}  // namespace

TEST_CASE("nine-box pyramid geometry") {
    auto pi = fixtures::nine_box();
    CHECK(pi.M() == 2);
    CHECK(pi.N() == 7);
    CHECK(pi.level() == 4);
    auto col = [&](BasisIndex i) { return pi.col_of(pi.position(i)); };
    auto row = [&](BasisIndex i) { return pi.row_of(pi.position(i)); };
    CHECK(col(P(1)) == 1);
    CHECK((col(B(1)) == 2 && col(P(2)) == 2 && col(P(3)) == 2));
    CHECK((col(B(2)) == 3 && col(P(4)) == 3 && col(P(5)) == 3));
    CHECK((col(P(6)) == 4 && col(P(7)) == 4));
    CHECK((row(B(1)) == 1 && row(P(2)) == 2 && row(P(3)) == 3));
    CHECK(pi.main_mode());
}

TEST_CASE("h and e of the nine-box pyramid") {
    auto pi = fixtures::nine_box();
    // diag order: b1, b2, 1..7
    CHECK(build_h(pi) == std::vector<long long>{1, -1, 3, 1, 1, -1, -1, -3, -3});
    const auto& A = pi.algebra();
    Element expect;
    for (auto [a, b] : std::vector<std::pair<BasisIndex, BasisIndex>>{
             {B(1), B(2)}, {P(2), P(4)}, {P(4), P(6)}, {P(1), P(3)}, {P(3), P(5)}, {P(5), P(7)}})
        expect += A.unit(pi.position(a), pi.position(b));
    CHECK(build_e(pi) == expect);
}

TEST_CASE("shift extraction round trips on the worked examples") {
    auto pi = fixtures::nine_box();
    auto spec = to_shift_and_level(pi);
    CHECK(spec.sigma == fixtures::sigma_3x3());
    CHECK(spec.level == 4);
    CHECK(spec.row_lengths() == std::vector<int>{2, 3, 4});
    CHECK(from_shift_and_level(spec) == pi);

    TruncationSpec big{fixtures::sigma_4x4(), 6};
    auto pi4 = from_shift_and_level(big);
    CHECK(pi4.rows() == std::vector<PyramidRow>{{'+', 2, 2}, {'-', 3, 2}, {'-', 4, 1}, {'-', 6, 0}});
    CHECK(to_shift_and_level(pi4) == big);
}

TEST_CASE("rho and the super height") {
    auto pi = fixtures::nine_box();
    auto g = rho(pi);
    CHECK(g.super_height == -1);
    CHECK(g.rho == std::vector<int>{4, 3, 2, 1});
    std::vector<int> q;
    for (int c = 1; c <= 4; ++c) q.push_back(pi.super_column_height(c));
    CHECK(q == std::vector<int>{-1, -1, -1, -2});
}

TEST_CASE("twisted units and the character") {
    auto pi = fixtures::nine_box();
    auto g = rho(pi);
    const auto& A = pi.algebra();
    int b1 = pi.position(B(1)), p1 = pi.position(P(1)), p3 = pi.position(P(3));
    // ~e_{b1 b1} = e + rho_2
    CHECK(tilde_e(b1, b1, pi, g) == A.unit(b1, b1) + Element::scalar(3));
    // ~e_{1 1} = e - rho_1
    CHECK(tilde_e(p1, p1, pi, g) == A.unit(p1, p1) - Element::scalar(4));
    // ~e_{1 3} picks up the column sign
    CHECK(tilde_e(p1, p3, pi, g) == A.unit(p1, p3) * Rational(-1));
    CHECK(chi(p3, p1, pi) == Rational(1));
    CHECK(chi(pi.position(B(2)), b1, pi) == Rational(-1));
    CHECK(chi(pi.position(P(5)), p1, pi) == Rational(0));
    CHECK(chi_plain(p3, p1, pi) == Rational(-1));
    CHECK_THROWS(chi(p1, p3, pi));
}

TEST_CASE("malformed pyramids are rejected with a reason") {
    auto kind = [](std::vector<PyramidRow> rows) {
        try {
            SignedPyramid::validate(std::move(rows));
        } catch (const PyramidError& e) {
            return e.kind();
        }
        FAIL("accepted");
        return PyramidError::Kind::Empty;
    };
    CHECK(kind({}) == PyramidError::Kind::Empty);
    CHECK(kind({{'+', 0, 0}}) == PyramidError::Kind::BadRow);
    CHECK(kind({{'+', 2, 0}, {'-', 2, 1}}) == PyramidError::Kind::NotNested);
    CHECK(kind({{'x', 2, 0}}) == PyramidError::Kind::BadRow);
    auto two_plus = SignedPyramid::validate({{'+', 1, 0}, {'+', 2, 0}});
    CHECK_THROWS_AS(rho(two_plus), PyramidError);
    CHECK_THROWS_AS(to_shift_and_level(two_plus), PyramidError);
    TruncationSpec bad{{{{0, 1}, {2, 0}}}, 2};
    CHECK_THROWS_AS(from_shift_and_level(bad), PyramidError);
    TruncationSpec nonadd{{{{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}}, 5};
    CHECK_THROWS_AS(nonadd.validate(), PyramidError);
}

TEST_CASE("pyramid gradings are good and even") {
    for (const auto& pi : {fixtures::nine_box(), fixtures::nine_box_mirror(), fixtures::rect_1_1(3), fixtures::four_row()}) {
        auto rep = check_good_grading(pi);
        INFO(rep.failures.size());
        CHECK(rep.ok);
    }
}

TEST_CASE("a perturbed h fails the grading check") {
    auto pi = fixtures::nine_box();
    std::vector<Rational> h;
    for (long long v : build_h(pi)) h.emplace_back(v);
    h[0] += Rational(1, 2);
    auto rep = check_good_grading(pi, h);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_failure == 1);
}

TEST_CASE("ad e ranks agree with an independent elimination") {
    auto pi = fixtures::nine_box();
    const auto& A = pi.algebra();
    auto h = build_h(pi);
    Element e = build_e(pi);
    auto nat = oracle::natural(pi.M(), pi.N());
    const int d = A.dim();
    // dense ad e on all of gl(M|N), checked grade by grade
    for (long long j = -6; j <= 6; j += 2) {
        std::vector<std::pair<int, int>> src, dst;
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) {
                if (h[p] - h[q] == j) src.emplace_back(p, q);
                if (h[p] - h[q] == j + 2) dst.emplace_back(p, q);
            }
        if (src.empty() || dst.empty()) continue;
        std::vector<std::vector<mpq_class>> mat;
        for (auto [p, q] : src) {
            auto img = oracle::evaluate(A.bracket(e, A.unit(p, q)), A, nat);
            std::vector<mpq_class> row;
            for (auto [a, b] : dst) row.push_back(img[a][b]);
            mat.push_back(row);
        }
        int r = oracle::bareiss_rank(mat);
        if (j <= -1) CHECK(r == static_cast<int>(src.size()));
        if (j >= -1) CHECK(r == static_cast<int>(dst.size()));
    }
}

TEST_CASE("centralizer basis has the expected size and commutes with e") {
    auto pi = fixtures::nine_box();
    auto basis = centralizer_basis(pi);
    CHECK(basis.size() == 23);
    Element e = build_e(pi);
    for (const auto& c : basis) {
        REQUIRE_FALSE(c.value.is_zero());
        REQUIRE(pi.algebra().bracket(e, c.value).is_zero());
        REQUIRE(c.degree == c.r);
    }
}
