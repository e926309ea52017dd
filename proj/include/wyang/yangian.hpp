#pragma once

#include "wyang/rational.hpp"
#include "wyang/shape.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wyang {

enum class Family { D, Dp, E, F };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::D: return "D";
        case Family::Dp: return "D'";
        case Family::E: return "E";
        case Family::F: return "F";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    if (s == "D") return Family::D;
    if (s == "D'" || s == "Dp") return Family::Dp;
    if (s == "E") return Family::E;
    if (s == "F") return Family::F;
    throw std::invalid_argument("unknown generator family '" + s + "'");
}

// An abstract parabolic generator. Blocks x (row) and y (column): D has
// x = y = a, E_{a,b} has (a, b) with a < b, F_{b,a} has (b, a).
struct GeneratorSymbol {
    Family family = Family::D;
    int x = 1, y = 1, i = 1, j = 1, r = 0;

    static GeneratorSymbol D(int a, int i, int j, int r) { return {Family::D, a, a, i, j, r}; }
    static GeneratorSymbol Dp(int a, int i, int j, int r) { return {Family::Dp, a, a, i, j, r}; }
    static GeneratorSymbol E(int a, int i, int j, int r) { return {Family::E, a, a + 1, i, j, r}; }
    static GeneratorSymbol F(int a, int i, int j, int r) { return {Family::F, a + 1, a, i, j, r}; }
    static GeneratorSymbol E(int a, int b, int i, int j, int r) { return {Family::E, a, b, i, j, r}; }
    static GeneratorSymbol F(int b, int a, int i, int j, int r) { return {Family::F, b, a, i, j, r}; }

    int parity() const {
        if (family == Family::D || family == Family::Dp) return 0;
        return (block_parity(x) + block_parity(y)) & 1;
    }
    bool composite() const { return (family == Family::E || family == Family::F) && std::abs(x - y) > 1; }
    // Block label a of a simple E_a / F_a, or of D_a.
    int block() const { return std::min(x, y); }

    std::string str() const {
        std::ostringstream os;
        os << family_name(family) << "_{";
        if (composite())
            os << x << "," << y;
        else
            os << block();
        os << ";" << i << "," << j << "}^{(" << r << ")}";
        return os.str();
    }

    auto operator<=>(const GeneratorSymbol&) const = default;
};

using Word = std::vector<GeneratorSymbol>;

inline int word_parity(const Word& w) {
    int p = 0;
    for (const auto& g : w) p ^= g.parity();
    return p;
}

// Formal linear combination of words in the generators. No relations are
// applied; equality is syntactic.
class YExpr {
public:
    YExpr() = default;
    static YExpr scalar(const Rational& c) {
        YExpr e;
        e.add(Word{}, c);
        return e;
    }
    static YExpr symbol(const GeneratorSymbol& g, const Rational& c = 1) {
        YExpr e;
        e.add(Word{g}, c);
        return e;
    }

    void add(const Word& w, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const std::map<Word, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    YExpr& operator+=(const YExpr& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    YExpr& operator-=(const YExpr& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    YExpr& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend YExpr operator+(YExpr a, const YExpr& b) { return a += b; }
    friend YExpr operator-(YExpr a, const YExpr& b) { return a -= b; }
    friend YExpr operator-(YExpr a) { return a *= Rational(-1); }
    friend YExpr operator*(const Rational& s, YExpr a) { return a *= s; }
    friend YExpr operator*(const YExpr& a, const YExpr& b) {
        YExpr out;
        for (const auto& [u, c] : a.terms_)
            for (const auto& [v, d] : b.terms_) {
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out.add(w, c * d);
            }
        return out;
    }
    friend bool operator==(const YExpr& a, const YExpr& b) { return a.terms_ == b.terms_; }

    // Every symbol occurring in the expression.
    std::vector<GeneratorSymbol> symbols() const {
        std::vector<GeneratorSymbol> out;
        for (const auto& [w, c] : terms_) out.insert(out.end(), w.begin(), w.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            Rational a = c;
            if (!first) os << (a.sign() < 0 ? " - " : " + ");
            else if (a.sign() < 0) os << "-";
            if (a.sign() < 0) a = -a;
            first = false;
            if (w.empty()) {
                os << a.str();
                continue;
            }
            if (a != Rational(1)) os << a.str() << "*";
            for (std::size_t k = 0; k < w.size(); ++k) os << (k ? " " : "") << w[k].str();
        }
        return os.str();
    }

private:
    std::map<Word, Rational> terms_;
};

// Supercommutator extended bilinearly over homogeneous words.
inline YExpr bracket(const YExpr& a, const YExpr& b) {
    YExpr out;
    for (const auto& [u, c] : a.terms())
        for (const auto& [v, d] : b.terms()) {
            Word uv = u, vu = v;
            uv.insert(uv.end(), v.begin(), v.end());
            vu.insert(vu.end(), u.begin(), u.end());
            out.add(uv, c * d);
            out.add(vu, (word_parity(u) & word_parity(v)) ? c * d : -(c * d));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Generator windows.

// Lowest admissible degree minus one: E_{a,b} needs r > s_{a,b}, F_{b,a} needs r > s_{b,a}.
inline int window_floor(const AdmissibleShape& mu, const GeneratorSymbol& g) {
    if (g.family == Family::D || g.family == Family::Dp) return -1;
    return mu.s(g.x, g.y);
}

inline bool in_window(const AdmissibleShape& mu, const GeneratorSymbol& g) { return g.r > window_floor(mu, g); }

// PBW generators of the truncation of level `level`: D_a up to p_a, E_{a,b}
// and F_{b,a} in windows of width p_a above their shifts.
inline std::vector<GeneratorSymbol> pbw_generators(const AdmissibleShape& mu, int level) {
    std::vector<GeneratorSymbol> out;
    const int B = mu.blocks();
    for (int a = 1; a <= B; ++a)
        for (int i = 1; i <= mu.size(a); ++i)
            for (int j = 1; j <= mu.size(a); ++j)
                for (int r = 1; r <= mu.p(a, level); ++r) out.push_back(GeneratorSymbol::D(a, i, j, r));
    for (int a = 1; a <= B; ++a)
        for (int b = a + 1; b <= B; ++b) {
            const int pa = mu.p(a, level);
            for (int i = 1; i <= mu.size(a); ++i)
                for (int j = 1; j <= mu.size(b); ++j)
                    for (int r = mu.s(a, b) + 1; r <= mu.s(a, b) + pa; ++r) out.push_back(GeneratorSymbol::E(a, b, i, j, r));
            for (int i = 1; i <= mu.size(b); ++i)
                for (int j = 1; j <= mu.size(a); ++j)
                    for (int r = mu.s(b, a) + 1; r <= mu.s(b, a) + pa; ++r) out.push_back(GeneratorSymbol::F(b, a, i, j, r));
        }
    return out;
}

// Number of supermonomials of total degree <= d in free generators given
// as (degree, parity) pairs; odd generators occur at most once.
inline long long count_supermonomials(const std::vector<std::pair<int, int>>& gens, int d) {
    std::vector<long long> f(d + 1, 0);
    f[0] = 1;
    for (auto [deg, par] : gens) {
        if (deg < 1) throw std::invalid_argument("generator of nonpositive degree");
        if (deg > d) continue;
        if (par) {
            for (int t = d; t >= deg; --t) f[t] += f[t - deg];
        } else {
            for (int t = deg; t <= d; ++t) f[t] += f[t - deg];
        }
    }
    long long total = 0;
    for (long long v : f) total += v;
    return total;
}

inline long long pbw_dimension(const AdmissibleShape& mu, int level, int d) {
    std::vector<std::pair<int, int>> gens;
    for (const auto& g : pbw_generators(mu, level)) gens.emplace_back(g.r, g.parity());
    return count_supermonomials(gens, d);
}

// ---------------------------------------------------------------------------
// The relation catalog.

// c * [x, [y, z]]
struct NestedBracket {
    Rational c;
    GeneratorSymbol x, y, z;

    YExpr expand() const {
        return c * bracket(YExpr::symbol(x), bracket(YExpr::symbol(y), YExpr::symbol(z)));
    }
};

struct RelationInstance {
    std::string id;
    std::vector<std::pair<std::string, int>> binding;
    YExpr lhs, rhs;
    // Some symbol lies below its window after cancellation.
    bool out_of_window = false;
    // Optional bracketed form of lhs, used only to evaluate it faster.
    std::vector<NestedBracket> nested;

    std::string key() const {
        std::ostringstream os;
        os << id;
        for (const auto& [n, v] : binding) os << " " << n << "=" << v;
        return os.str();
    }
};

namespace detail {

// D^{(0)} and D'^{(0)} are the identity matrix.
inline YExpr d_sym(int a, int i, int j, int t) {
    if (t == 0) return YExpr::scalar(i == j ? 1 : 0);
    return YExpr::symbol(GeneratorSymbol::D(a, i, j, t));
}
inline YExpr dp_sym(int a, int i, int j, int t) {
    if (t == 0) return YExpr::scalar(i == j ? 1 : 0);
    return YExpr::symbol(GeneratorSymbol::Dp(a, i, j, t));
}
inline YExpr e_sym(int a, int i, int j, int t) { return YExpr::symbol(GeneratorSymbol::E(a, i, j, t)); }
inline YExpr f_sym(int a, int i, int j, int t) { return YExpr::symbol(GeneratorSymbol::F(a, i, j, t)); }

class CatalogBuilder {
public:
    CatalogBuilder(const AdmissibleShape& mu, int rmax) : mu_(mu), rmax_(rmax) {}

    void push(std::string id, std::vector<std::pair<std::string, int>> binding, YExpr lhs, YExpr rhs,
              std::vector<NestedBracket> nested = {}) {
        RelationInstance ri{std::move(id), std::move(binding), std::move(lhs), std::move(rhs), false, std::move(nested)};
        for (const YExpr* side : {&ri.lhs, &ri.rhs})
            for (const auto& g : side->symbols()) {
                if (g.r > rmax_) return;
                if (!in_window(mu_, g)) ri.out_of_window = true;
            }
        out_.push_back(std::move(ri));
    }
    std::vector<RelationInstance> take() { return std::move(out_); }

private:
    const AdmissibleShape& mu_;
    int rmax_;
    std::vector<RelationInstance> out_;
};

}  // namespace detail

// Every defining relation of the parabolic presentation, instantiated over
// all admissible indices. An instance is kept when every generator it
// mentions has degree at most rmax.
inline std::vector<RelationInstance> relation_catalog(const AdmissibleShape& mu, int rmax) {
    using namespace detail;
    CatalogBuilder cb(mu, rmax);
    const int B = mu.blocks(), m = B - 1;
    auto sz = [&](int a) { return mu.size(a); };
    auto eflo = [&](int a) { return mu.s(a, a + 1); };
    auto fflo = [&](int a) { return mu.s(a + 1, a); };

    // D times D' is the identity.
    for (int a = 1; a <= B; ++a)
        for (int i = 1; i <= sz(a); ++i)
            for (int j = 1; j <= sz(a); ++j)
                for (int r = 1; r <= rmax; ++r) {
                    YExpr lhs;
                    for (int t = 0; t <= r; ++t)
                        for (int p = 1; p <= sz(a); ++p) lhs += d_sym(a, i, p, t) * dp_sym(a, p, j, r - t);
                    cb.push("dinv", {{"a", a}, {"i", i}, {"j", j}, {"r", r}}, lhs, YExpr{});
                }
    // The same with the factors reversed; a consequence, listed so that the
    // catalog is closed under tau.
    for (int a = 1; a <= B; ++a)
        for (int i = 1; i <= sz(a); ++i)
            for (int j = 1; j <= sz(a); ++j)
                for (int r = 1; r <= rmax; ++r) {
                    YExpr lhs;
                    for (int t = 0; t <= r; ++t)
                        for (int p = 1; p <= sz(a); ++p) lhs += dp_sym(a, i, p, t) * d_sym(a, p, j, r - t);
                    cb.push("dinvl", {{"a", a}, {"i", i}, {"j", j}, {"r", r}}, lhs, YExpr{});
                }

    // [D, D]
    for (int a = 1; a <= B; ++a)
        for (int b = 1; b <= B; ++b)
            for (int i = 1; i <= sz(a); ++i)
                for (int j = 1; j <= sz(a); ++j)
                    for (int h = 1; h <= sz(b); ++h)
                        for (int k = 1; k <= sz(b); ++k)
                            for (int r = 1; r <= rmax; ++r)
                                for (int s = 1; s <= rmax; ++s) {
                                    YExpr lhs = bracket(d_sym(a, i, j, r), d_sym(b, h, k, s)), rhs;
                                    if (a == b) {
                                        for (int t = 0; t <= std::min(r, s) - 1; ++t) {
                                            rhs += d_sym(a, h, j, t) * d_sym(a, i, k, r + s - 1 - t);
                                            rhs -= d_sym(a, h, j, r + s - 1 - t) * d_sym(a, i, k, t);
                                        }
                                        if (block_parity(a)) rhs *= Rational(-1);
                                    }
                                    cb.push("dd", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}}, lhs, rhs);
                                }

    // [D, E] and [D, F]
    for (int a = 1; a <= B; ++a)
        for (int b = 1; b <= m; ++b) {
            if (a != b && a != b + 1) {
                for (int i = 1; i <= sz(a); ++i)
                    for (int j = 1; j <= sz(a); ++j)
                        for (int h = 1; h <= sz(b); ++h)
                            for (int k = 1; k <= sz(b + 1); ++k)
                                for (int r = 1; r <= rmax; ++r)
                                    for (int s = eflo(b) + 1; s <= rmax; ++s)
                                        cb.push("de", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                                bracket(d_sym(a, i, j, r), e_sym(b, h, k, s)), YExpr{});
                for (int i = 1; i <= sz(a); ++i)
                    for (int j = 1; j <= sz(a); ++j)
                        for (int h = 1; h <= sz(b + 1); ++h)
                            for (int k = 1; k <= sz(b); ++k)
                                for (int r = 1; r <= rmax; ++r)
                                    for (int s = fflo(b) + 1; s <= rmax; ++s)
                                        cb.push("df", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                                bracket(d_sym(a, i, j, r), f_sym(b, h, k, s)), YExpr{});
                continue;
            }
            for (int i = 1; i <= sz(a); ++i)
                for (int j = 1; j <= sz(a); ++j)
                    for (int h = 1; h <= sz(b); ++h)
                        for (int k = 1; k <= sz(b + 1); ++k)
                            for (int r = 1; r <= rmax; ++r)
                                for (int s = eflo(b) + 1; s <= rmax; ++s) {
                                    YExpr rhs;
                                    for (int t = 0; t <= r - 1; ++t) {
                                        if (a == b && h == j)
                                            for (int p = 1; p <= sz(a); ++p)
                                                rhs += Rational(b == 1 ? 1 : -1) * (d_sym(a, i, p, t) * e_sym(a, p, k, r + s - 1 - t));
                                        if (a == b + 1) rhs += d_sym(a, i, k, t) * e_sym(b, h, j, r + s - 1 - t);
                                    }
                                    cb.push("de", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                            bracket(d_sym(a, i, j, r), e_sym(b, h, k, s)), rhs);
                                }
            for (int i = 1; i <= sz(a); ++i)
                for (int j = 1; j <= sz(a); ++j)
                    for (int h = 1; h <= sz(b + 1); ++h)
                        for (int k = 1; k <= sz(b); ++k)
                            for (int r = 1; r <= rmax; ++r)
                                for (int s = fflo(b) + 1; s <= rmax; ++s) {
                                    YExpr rhs;
                                    for (int t = 0; t <= r - 1; ++t) {
                                        if (a == b && k == i)
                                            for (int p = 1; p <= sz(a); ++p)
                                                rhs += Rational(b == 1 ? -1 : 1) * (f_sym(b, h, p, r + s - 1 - t) * d_sym(a, p, j, t));
                                        if (a == b + 1) rhs -= f_sym(b, i, k, r + s - 1 - t) * d_sym(a, h, j, t);
                                    }
                                    cb.push("df", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                            bracket(d_sym(a, i, j, r), f_sym(b, h, k, s)), rhs);
                                }
        }

    // [E_a, E_a] and [F_a, F_a]
    for (int a = 1; a <= m; ++a) {
        for (int i = 1; i <= sz(a); ++i)
            for (int j = 1; j <= sz(a + 1); ++j)
                for (int h = 1; h <= sz(a); ++h)
                    for (int k = 1; k <= sz(a + 1); ++k)
                        for (int r = eflo(a) + 1; r <= rmax; ++r)
                            for (int s = eflo(a) + 1; s <= rmax; ++s) {
                                YExpr rhs;
                                for (int t = 1; t <= r - 1; ++t) rhs += e_sym(a, i, k, t) * e_sym(a, h, j, r + s - 1 - t);
                                for (int t = 1; t <= s - 1; ++t) rhs -= e_sym(a, i, k, t) * e_sym(a, h, j, r + s - 1 - t);
                                cb.push("ee", {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        bracket(e_sym(a, i, j, r), e_sym(a, h, k, s)), rhs);
                            }
        for (int i = 1; i <= sz(a + 1); ++i)
            for (int j = 1; j <= sz(a); ++j)
                for (int h = 1; h <= sz(a + 1); ++h)
                    for (int k = 1; k <= sz(a); ++k)
                        for (int r = fflo(a) + 1; r <= rmax; ++r)
                            for (int s = fflo(a) + 1; s <= rmax; ++s) {
                                YExpr rhs;
                                for (int t = 1; t <= s - 1; ++t) rhs += f_sym(a, i, k, r + s - 1 - t) * f_sym(a, h, j, t);
                                for (int t = 1; t <= r - 1; ++t) rhs -= f_sym(a, i, k, r + s - 1 - t) * f_sym(a, h, j, t);
                                if (a == 1) rhs *= Rational(-1);
                                cb.push("ff", {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                        bracket(f_sym(a, i, j, r), f_sym(a, h, k, s)), rhs);
                            }
    }

    // [E_a, F_b]
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b)
            for (int i = 1; i <= sz(a); ++i)
                for (int j = 1; j <= sz(a + 1); ++j)
                    for (int h = 1; h <= sz(b + 1); ++h)
                        for (int k = 1; k <= sz(b); ++k)
                            for (int r = eflo(a) + 1; r <= rmax; ++r)
                                for (int s = fflo(b) + 1; s <= rmax; ++s) {
                                    YExpr rhs;
                                    if (a == b)
                                        for (int t = 0; t <= r + s - 1; ++t) rhs += d_sym(a + 1, h, j, r + s - 1 - t) * dp_sym(a, i, k, t);
                                    cb.push("ef", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                            bracket(e_sym(a, i, j, r), f_sym(b, h, k, s)), rhs);
                                }

    // Degree-shift relations between neighbours.
    for (int a = 1; a + 1 <= m; ++a) {
        for (int i = 1; i <= sz(a); ++i)
            for (int j = 1; j <= sz(a + 1); ++j)
                for (int h = 1; h <= sz(a + 1); ++h)
                    for (int k = 1; k <= sz(a + 2); ++k)
                        for (int r = eflo(a) + 1; r <= rmax; ++r)
                            for (int s = eflo(a + 1) + 1; s <= rmax; ++s) {
                                YExpr lhs = bracket(e_sym(a, i, j, r + 1), e_sym(a + 1, h, k, s)) -
                                            bracket(e_sym(a, i, j, r), e_sym(a + 1, h, k, s + 1));
                                YExpr rhs;
                                if (h == j)
                                    for (int q = 1; q <= sz(a + 1); ++q) rhs -= e_sym(a, i, q, r) * e_sym(a + 1, q, k, s);
                                cb.push("eedeg", {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}}, lhs, rhs);
                            }
        for (int i = 1; i <= sz(a + 1); ++i)
            for (int j = 1; j <= sz(a); ++j)
                for (int h = 1; h <= sz(a + 2); ++h)
                    for (int k = 1; k <= sz(a + 1); ++k)
                        for (int r = fflo(a) + 1; r <= rmax; ++r)
                            for (int s = fflo(a + 1) + 1; s <= rmax; ++s) {
                                YExpr lhs = bracket(f_sym(a, i, j, r + 1), f_sym(a + 1, h, k, s)) -
                                            bracket(f_sym(a, i, j, r), f_sym(a + 1, h, k, s + 1));
                                YExpr rhs;
                                if (i == k)
                                    for (int q = 1; q <= sz(a + 1); ++q) rhs += f_sym(a + 1, h, q, s) * f_sym(a, q, j, r);
                                cb.push("ffdeg", {{"a", a}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}}, lhs, rhs);
                            }
    }

    // Vanishing brackets.
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) {
            for (int i = 1; i <= sz(a); ++i)
                for (int j = 1; j <= sz(a + 1); ++j)
                    for (int h = 1; h <= sz(b); ++h)
                        for (int k = 1; k <= sz(b + 1); ++k) {
                            if (b == a + 1 && h == j) continue;
                            for (int r = eflo(a) + 1; r <= rmax; ++r)
                                for (int s = eflo(b) + 1; s <= rmax; ++s)
                                    cb.push("ee0", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                            bracket(e_sym(a, i, j, r), e_sym(b, h, k, s)), YExpr{});
                        }
            for (int i = 1; i <= sz(a + 1); ++i)
                for (int j = 1; j <= sz(a); ++j)
                    for (int h = 1; h <= sz(b + 1); ++h)
                        for (int k = 1; k <= sz(b); ++k) {
                            if (b == a + 1 && i == k) continue;
                            for (int r = fflo(a) + 1; r <= rmax; ++r)
                                for (int s = fflo(b) + 1; s <= rmax; ++s)
                                    cb.push("ff0", {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"r", r}, {"s", s}},
                                            bracket(f_sym(a, i, j, r), f_sym(b, h, k, s)), YExpr{});
                        }
        }

    // Cubic Serre-type relations; symmetric in (r, s), so r <= s suffices.
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b) {
            if (b == a) continue;
            for (int i = 1; i <= sz(a); ++i)
                for (int j = 1; j <= sz(a + 1); ++j)
                    for (int h = 1; h <= sz(a); ++h)
                        for (int k = 1; k <= sz(a + 1); ++k)
                            for (int f = 1; f <= sz(b); ++f)
                                for (int g = 1; g <= sz(b + 1); ++g)
                                    for (int r = eflo(a) + 1; r <= rmax; ++r)
                                        for (int s = r; s <= rmax; ++s)
                                            for (int l = eflo(b) + 1; l <= rmax; ++l) {
                                                std::vector<NestedBracket> nb{
                                                    {1, GeneratorSymbol::E(a, i, j, r), GeneratorSymbol::E(a, h, k, s), GeneratorSymbol::E(b, f, g, l)},
                                                    {1, GeneratorSymbol::E(a, i, j, s), GeneratorSymbol::E(a, h, k, r), GeneratorSymbol::E(b, f, g, l)}};
                                                cb.push("eee",
                                                        {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"f", f}, {"g", g}, {"r", r}, {"s", s}, {"l", l}},
                                                        nb[0].expand() + nb[1].expand(), YExpr{}, nb);
                                            }
            for (int i = 1; i <= sz(a + 1); ++i)
                for (int j = 1; j <= sz(a); ++j)
                    for (int h = 1; h <= sz(a + 1); ++h)
                        for (int k = 1; k <= sz(a); ++k)
                            for (int f = 1; f <= sz(b + 1); ++f)
                                for (int g = 1; g <= sz(b); ++g)
                                    for (int r = fflo(a) + 1; r <= rmax; ++r)
                                        for (int s = r; s <= rmax; ++s)
                                            for (int l = fflo(b) + 1; l <= rmax; ++l) {
                                                std::vector<NestedBracket> nb{
                                                    {1, GeneratorSymbol::F(a, i, j, r), GeneratorSymbol::F(a, h, k, s), GeneratorSymbol::F(b, f, g, l)},
                                                    {1, GeneratorSymbol::F(a, i, j, s), GeneratorSymbol::F(a, h, k, r), GeneratorSymbol::F(b, f, g, l)}};
                                                cb.push("fff",
                                                        {{"a", a}, {"b", b}, {"i", i}, {"j", j}, {"h", h}, {"k", k}, {"f", f}, {"g", g}, {"r", r}, {"s", s}, {"l", l}},
                                                        nb[0].expand() + nb[1].expand(), YExpr{}, nb);
                                            }
        }

    auto out = cb.take();
    std::stable_sort(out.begin(), out.end(), [](const RelationInstance& x, const RelationInstance& y) { return x.id < y.id; });
    return out;
}

// ---------------------------------------------------------------------------
// tau and iota.

inline GeneratorSymbol tau(const GeneratorSymbol& g) {
    GeneratorSymbol t = g;
    std::swap(t.i, t.j);
    if (g.family == Family::E || g.family == Family::F) {
        t.family = g.family == Family::E ? Family::F : Family::E;
        std::swap(t.x, t.y);
    }
    return t;
}

// Anti-isomorphism onto the transposed shift: reverses words, no sign.
// A Koszul sign here would break the odd [E, F] relations.
inline YExpr tau(const YExpr& e) {
    YExpr out;
    for (const auto& [w, c] : e.terms()) {
        Word rw;
        for (auto it = w.rbegin(); it != w.rend(); ++it) rw.push_back(tau(*it));
        out.add(rw, c);
    }
    return out;
}

inline ShiftMatrix transpose_sigma(const ShiftMatrix& s) { return s.transpose(); }

// The regrading isomorphism onto a shift matrix with the same
// neighbouring sums; D is fixed, E/F degrees move with the shift.
inline void require_iota_compatible(const ShiftMatrix& s, const ShiftMatrix& t) {
    if (s.size() != t.size()) throw std::invalid_argument("shift matrices of different size");
    for (int i = 1; i < s.size(); ++i)
        if (s(i, i + 1) + s(i + 1, i) != t(i, i + 1) + t(i + 1, i))
            throw std::invalid_argument("shift matrices differ in s(i,i+1)+s(i+1,i) at i=" + std::to_string(i));
}

inline GeneratorSymbol iota(const GeneratorSymbol& g, const AdmissibleShape& from, const AdmissibleShape& to) {
    GeneratorSymbol t = g;
    if (g.family == Family::E || g.family == Family::F) t.r = g.r - from.s(g.x, g.y) + to.s(g.x, g.y);
    return t;
}

inline YExpr iota(const YExpr& e, const AdmissibleShape& from, const AdmissibleShape& to) {
    require_iota_compatible(from.sigma(), to.sigma());
    if (from.parts() != to.parts()) throw std::invalid_argument("iota needs the same shape on both sides");
    YExpr out;
    for (const auto& [w, c] : e.terms()) {
        Word v;
        for (const auto& g : w) v.push_back(iota(g, from, to));
        out.add(v, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Baby comultiplications, as formal tensors.

enum class Side { R, L };

inline char side_char(Side s) { return s == Side::R ? 'R' : 'L'; }

// One tensor term: a Yangian expression for the smaller shift matrix times
// either 1 (k = 0) or a shifted matrix unit ~e_{k,l} of gl_beta. For side
// R the Yangian factor is on the left, for side L on the right.
struct BabyTerm {
    YExpr yangian;
    int k = 0, l = 0;
};

struct BabyImage {
    Side side = Side::R;
    std::vector<BabyTerm> terms;
};

// beta = size of the last block of the minimal shape.
struct BabyData {
    Side side;
    int beta;
    ShiftMatrix dot_sigma;
};

inline BabyData baby_data(const AdmissibleShape& mu, Side side) {
    if (!mu.is_minimal()) throw std::invalid_argument("baby comultiplication needs the minimal admissible shape");
    const ShiftMatrix& s = mu.sigma();
    const int n1 = s.size(), beta = mu.size(mu.blocks());
    if (mu.blocks() < 2) throw std::invalid_argument("baby comultiplication needs at least two blocks");
    const int cut = n1 - beta;  // n + 1 - beta
    ShiftMatrix d = s;
    if (side == Side::R) {
        if (s(cut, cut + 1) == 0) throw std::domain_error("side R undefined: s(" + std::to_string(cut) + "," + std::to_string(cut + 1) + ") = 0");
        for (int i = 1; i <= n1; ++i)
            for (int j = 1; j <= n1; ++j)
                if (i <= cut && cut < j) d.s[i - 1][j - 1] -= 1;
    } else {
        if (s(cut + 1, cut) == 0) throw std::domain_error("side L undefined: s(" + std::to_string(cut + 1) + "," + std::to_string(cut) + ") = 0");
        for (int i = 1; i <= n1; ++i)
            for (int j = 1; j <= n1; ++j)
                if (j <= cut && cut < i) d.s[i - 1][j - 1] -= 1;
    }
    return {side, beta, d};
}

inline bool baby_defined(const AdmissibleShape& mu, Side side) {
    try {
        baby_data(mu, side);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

// Image of a generator (simple or composite, not D') under Delta_side.
// `pivot` is the h of the composite formulas.
inline BabyImage baby_comultiplication(const AdmissibleShape& mu, Side side, const GeneratorSymbol& g, int pivot = 1) {
    const BabyData bd = baby_data(mu, side);
    const int m = mu.blocks() - 1, beta = bd.beta;
    BabyImage out{side, {}};
    auto plain = [&](const GeneratorSymbol& x) { out.terms.push_back({YExpr::symbol(x), 0, 0}); };
    auto lower = [](GeneratorSymbol x) {
        x.r -= 1;
        if (x.r == 0 && x.family == Family::D) return YExpr::scalar(x.i == x.j ? 1 : 0);
        return YExpr::symbol(x);
    };
    if (g.family == Family::Dp) throw std::invalid_argument("no baby formula for D'");
    if (g.family == Family::D) {
        plain(g);
        if (g.x == m + 1)
            for (int k = 1; k <= beta; ++k) {
                GeneratorSymbol x = g;
                if (side == Side::R) {
                    x.j = k;
                    out.terms.push_back({-lower(x), k, g.j});
                } else {
                    x.i = k;
                    out.terms.push_back({-lower(x), g.i, k});
                }
            }
        return out;
    }
    const bool isE = g.family == Family::E;
    if (!g.composite()) {
        plain(g);
        const int a = g.block();
        if (a == m && ((side == Side::R && isE) || (side == Side::L && !isE)))
            for (int k = 1; k <= beta; ++k) {
                GeneratorSymbol x = g;
                if (side == Side::R) {
                    x.j = k;
                    out.terms.push_back({-lower(x), k, g.j});
                } else {
                    x.i = k;
                    out.terms.push_back({-lower(x), g.i, k});
                }
            }
        return out;
    }
    // Composite generators.
    if (side == Side::R && isE && g.y == m + 1) {
        const int a = g.x, sm = mu.s(m, m + 1);
        YExpr left = g.x + 1 == m ? YExpr::symbol(GeneratorSymbol::E(a, g.i, pivot, g.r - sm))
                                  : YExpr::symbol(GeneratorSymbol::E(a, m, g.i, pivot, g.r - sm));
        out.terms.push_back({-bracket(left, YExpr::symbol(GeneratorSymbol::E(m, pivot, g.j, sm + 1))), 0, 0});
        for (int k = 1; k <= beta; ++k) out.terms.push_back({-YExpr::symbol(GeneratorSymbol::E(a, m + 1, g.i, k, g.r - 1)), k, g.j});
        return out;
    }
    if (side == Side::L && !isE && g.x == m + 1) {
        const int a = g.y, sm = mu.s(m + 1, m);
        YExpr right = a + 1 == m ? YExpr::symbol(GeneratorSymbol::F(a, pivot, g.j, g.r - sm))
                                 : YExpr::symbol(GeneratorSymbol::F(m, a, pivot, g.j, g.r - sm));
        out.terms.push_back({-bracket(YExpr::symbol(GeneratorSymbol::F(m, g.i, pivot, sm + 1)), right), 0, 0});
        for (int k = 1; k <= beta; ++k) out.terms.push_back({-YExpr::symbol(GeneratorSymbol::F(m + 1, a, k, g.j, g.r - 1)), g.i, k});
        return out;
    }
    plain(g);
    return out;
}

}  // namespace wyang
