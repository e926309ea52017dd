// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"
#include "oracle.hpp"
#include "wyang/verify.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace wyang;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool passed(const std::vector<CheckReport>& rs, Outcome& out, const std::string& label) {
    for (const auto& r : rs)
        if (r.status != "pass") {
            out.require(false, label + ": " + r.id + " " + r.status + (r.note.empty() ? "" : " (" + r.note + ")"));
            return false;
        }
    return true;
}

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    detail::Stopwatch sw;
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("error: ") + e.what();
    }
    const double s = sw.millis() / 1000;
    if (out.ok && s > limit_s) {
        out.ok = false;
        std::ostringstream os;
        os << "took " << s << " s, limit " << limit_s << " s";
        out.detail = os.str();
    }
    failures += !out.ok;
    std::printf("[%s] %2d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", n, name.c_str(), s, out.detail.empty() ? "" : ": ",
                out.detail.c_str());
    std::fflush(stdout);
}

ShiftMatrix from_steps(const std::vector<int>& up, const std::vector<int>& down) {
    const int n1 = static_cast<int>(up.size()) + 1;
    ShiftMatrix s{std::vector<std::vector<int>>(n1, std::vector<int>(n1, 0))};
    for (int i = 0; i < n1; ++i)
        for (int j = i + 1; j < n1; ++j)
            for (int k = i; k < j; ++k) {
                s.s[i][j] += up[k];
                s.s[j][i] += down[k];
            }
    return s;
}

// Distinct main-mode pyramids with at most four rows and level at most six.
std::vector<SignedPyramid> generated_pyramids(int count) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> rows(2, 4), step(0, 2), lev(1, 6);
    std::vector<SignedPyramid> out;
    std::set<std::string> seen;
    while (static_cast<int>(out.size()) < count) {
        const int n1 = rows(rng);
        std::vector<int> up, down;
        for (int k = 0; k + 1 < n1; ++k) {
            up.push_back(step(rng));
            down.push_back(step(rng));
        }
        const TruncationSpec t{from_steps(up, down), lev(rng)};
        bool fits = true;
        for (int i = 1; i <= n1; ++i) fits = fits && t.row_length(i) >= 1;
        if (!fits) continue;
        SignedPyramid pi = from_shift_and_level(t);
        if (seen.insert(pyramid_to_json(pi).dump()).second) out.push_back(pi);
    }
    return out;
}

TruncatedSeries sum_products(const WSuper& w, int i, int j, int x, int y, int R, bool left_first) {
    TruncatedSeries acc(R);
    for (int k = x + 1; k <= y; ++k) {
        auto a = left_first ? w.t_series(i, k, x, R) : w.t_series(i, k, y, R);
        auto b = left_first ? w.t_series(k, j, y, R) : w.t_series(k, j, x, R);
        acc += multiply(w.algebra(), a, b);
    }
    return acc;
}

YExpr random_expr(std::mt19937& rng, const AdmissibleShape& mu) {
    const auto gens = generator_symbols(mu, 4);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(0, 4), coef(-5, 5);
    YExpr e;
    for (int t = 0; t < 5; ++t) {
        Word w;
        for (int k = len(rng); k > 0; --k) w.push_back(gens[pick(rng)]);
        e.add(w, coef(rng));
    }
    return e;
}

}  // namespace

int main() {
    const SignedPyramid nine = fixtures::nine_box();
    const SignedPyramid six = from_shift_and_level({fixtures::sigma_4x4(), 6});
    const WSuper w(nine);
    const AdmissibleShape mu = AdmissibleShape::parse("1|1,1", w.shifts());

    criterion(1, "paper values: e, h and shift matrices", 1, [&](Outcome& out) {
        const SuperAlgebra& A = nine.algebra();
        auto B = BasisIndex::bar;
        auto P = BasisIndex::plain;
        Element e;
        for (auto [a, b] : std::vector<std::pair<BasisIndex, BasisIndex>>{
                 {B(1), B(2)}, {P(2), P(4)}, {P(4), P(6)}, {P(1), P(3)}, {P(3), P(5)}, {P(5), P(7)}})
            e += A.unit(nine.position(a), nine.position(b));
        out.require(build_e(nine) == e, "e differs");
        out.require(build_h(nine) == std::vector<long long>{1, -1, 3, 1, 1, -1, -1, -3, -3}, "h differs");
        const TruncationSpec t4 = to_shift_and_level(nine);
        out.require(t4.level == 4 && t4.sigma == ShiftMatrix{{{0, 1, 1}, {0, 0, 0}, {1, 1, 0}}}, "level 4 shift matrix differs");
        const TruncationSpec t6 = to_shift_and_level(six);
        out.require(t6.level == 6 && t6.sigma == ShiftMatrix{{{0, 1, 1, 2}, {0, 0, 0, 1}, {1, 1, 0, 1}, {2, 2, 1, 0}}},
                    "level 6 shift matrix differs");
    });

    criterion(2, "centralizer: 23 elements, nullity of ad e", 1, [&](Outcome& out) {
        const SuperAlgebra& A = nine.algebra();
        const auto basis = centralizer_basis(nine);
        const Element e = build_e(nine);
        out.require(basis.size() == 23, "basis has " + std::to_string(basis.size()) + " elements");
        for (const auto& c : basis) out.require(!c.value.is_zero() && A.bracket(e, c.value).is_zero(), "element does not commute with e");
        const auto nat = oracle::natural(nine.M(), nine.N());
        const int d = A.dim();
        std::vector<std::vector<mpq_class>> ad;
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) {
                const auto img = oracle::evaluate(A.bracket(e, A.unit(p, q)), A, nat);
                std::vector<mpq_class> row;
                for (const auto& r : img) row.insert(row.end(), r.begin(), r.end());
                ad.push_back(row);
            }
        const int nullity = d * d - oracle::bareiss_rank(ad);
        out.require(nullity == 23, "dense nullity " + std::to_string(nullity));
    });

    criterion(3, "good grading on 2 paper and 50 generated pyramids", 60, [&](Outcome& out) {
        std::vector<SignedPyramid> all{nine, six};
        for (auto& pi : generated_pyramids(50)) all.push_back(pi);
        for (const auto& pi : all) {
            const GradingReport g = check_good_grading(pi);
            out.require(g.ok, pyramid_to_json(pi).dump() + " fails axiom " + std::to_string(g.first_failure));
        }
    });

    criterion(4, "T-series identities to order 6", 120, [&](Outcome& out) {
        const int n1 = 3, R = 6;
        int instances = 0;
        for (int x = 0; x <= n1; ++x)
            for (int y = x; y <= n1; ++y)
                for (int i = 1; i <= n1; ++i)
                    for (int j = 1; j <= n1; ++j) {
                        if (x < i && i <= y && y < j) {
                            out.require(w.t_series(i, j, x, R) == sum_products(w, i, j, x, y, R, true), "part (i)");
                            ++instances;
                        }
                        if (x < j && j <= y && y < i) {
                            out.require(w.t_series(i, j, x, R) == sum_products(w, i, j, x, y, R, false), "part (ii)");
                            ++instances;
                        }
                        if (x < y && y < i && y < j) {
                            TruncatedSeries rhs = w.t_series(i, j, y, R);
                            for (int k = x + 1; k <= y; ++k)
                                for (int l = x + 1; l <= y; ++l)
                                    rhs += multiply(w.algebra(), multiply(w.algebra(), w.t_series(i, k, y, R), w.t_series(k, l, x, R)),
                                                    w.t_series(l, j, y, R));
                            out.require(w.t_series(i, j, x, R) == rhs, "part (iii)");
                            ++instances;
                        }
                        if (x < i && i <= y && x < j && j <= y) {
                            out.require(sum_products(w, i, j, x, y, R, true) == TruncatedSeries::scalar(i == j ? -1 : 0, R), "part (iv)");
                            ++instances;
                        }
                    }
        out.require(instances > 0, "no instances");
    });

    criterion(5, "Gauss blocks equal the closed T-formulas to order 6", 120, [&](Outcome& out) {
        const int R = 6;
        for (std::vector<int> parts : {std::vector<int>{1, 1, 1}, std::vector<int>{1, 2}}) {
            const auto g = gauss_decompose(w.algebra(), w.t_matrix(0, R), parts);
            int off = 0;
            for (std::size_t a = 0; a < parts.size(); ++a) {
                for (int i = 1; i <= parts[a]; ++i)
                    for (int j = 1; j <= parts[a]; ++j) {
                        out.require(g.D[a](i - 1, j - 1) == w.t_series(off + i, off + j, off, R), "D block");
                        TruncatedSeries neg(R);
                        neg -= w.t_series(off + i, off + j, off + parts[a], R);
                        out.require(g.Dp[a](i - 1, j - 1) == neg, "D' block");
                    }
                if (a + 1 < parts.size()) {
                    const int next = off + parts[a];
                    for (int i = 1; i <= parts[a]; ++i)
                        for (int j = 1; j <= parts[a + 1]; ++j) {
                            out.require(g.E[a](i - 1, j - 1) == w.t_series(off + i, next + j, next, R), "E block");
                            out.require(g.F[a](j - 1, i - 1) == w.t_series(next + j, off + i, next, R), "F block");
                        }
                }
                off += parts[a];
            }
        }
    });

    criterion(6, "main theorem: rectangle, and nine boxes with r_max = 5", 15 * 60, [&](Outcome& out) {
        const WSuper rect(fixtures::rect_1_1(2));
        passed(check_main_theorem(rect, AdmissibleShape::minimal(rect.shifts()), 5), out, "rectangle");
        const double left_ms = 15 * 60 * 1000.0 - 1000;
        passed(check_main_theorem(w, mu, 5, 1, GenOracle::Closed, left_ms), out, "nine boxes");
    });

    criterion(7, "dimension identity for d <= 6", 1, [&](Outcome& out) {
        out.require(check_dimensions(nine, 6).status == "pass", "nine boxes");
        out.require(check_dimensions(six, 6).status == "pass", "level six");
        out.require(pbw_dimension(mu, 4, 1) == 6, "anchor: pbw side at d = 1");
        out.require(count_supermonomials(centralizer_generators(nine), 1) == 6, "anchor: centralizer side at d = 1");
    });

    criterion(8, "baby comultiplication, side R, r_max = 4", 5 * 60, [&](Outcome& out) {
        passed(check_baby(nine, Side::R, 4), out, "side R");
    });

    criterion(9, "tau, iota and shift independence", 60, [&](Outcome& out) {
        std::mt19937 rng(99);
        for (int t = 0; t < 100; ++t) {
            const YExpr x = random_expr(rng, mu);
            out.require(tau(tau(x)) == x, "tau is not an involution");
            out.require(iota(x, mu, mu) == x, "iota with equal shifts is not the identity");
        }
        out.require(check_tau_catalog(mu, 4).status == "pass", "tau catalog");
        passed(check_shift_independence(nine, fixtures::nine_box_mirror(), 6, 4), out, "shift pair");
    });

    criterion(10, "a corrupted relation is caught and replayable", 60, [&](Outcome& out) {
        const ParabolicImages img(w, mu);
        const auto rep = check_relations(img, corrupt_catalog(relation_catalog(mu, 3)));
        out.require(rep.failed() && rep.failures.size() == 1, "corruption not reported exactly once");
        if (!rep.failures.empty()) out.require(replay_failure(rep.failures[0], img), "counterexample does not replay");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
