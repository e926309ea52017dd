#pragma once

#include "wyang/pyramid.hpp"
#include "wyang/series.hpp"
#include "wyang/shape.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace wyang {

// One sign per pyramid row, +1 or -1.
using SignVector = std::vector<int>;

inline SignVector level_signs(int rows, int x) {
    SignVector s(rows);
    for (int i = 1; i <= rows; ++i) s[i - 1] = i <= x ? -1 : 1;
    return s;
}

// The W-side of a pyramid: twisted units, the chi-projection and the
// invariants T_{i,j;sigma}^{(r)} in U(p).
class WSuper {
public:
    explicit WSuper(SignedPyramid pi) : pi_(std::move(pi)) {
        pi_.require_main_mode();
        geo_ = rho(pi_);
        sigma_ = indentation_matrix(pi_);
        const int d = pi_.M() + pi_.N();
        tilde_.resize(d * d);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) tilde_[p * d + q] = wyang::tilde_e(p, q, pi_, geo_);
    }

    const SignedPyramid& pyramid() const { return pi_; }
    const SuperAlgebra& algebra() const { return pi_.algebra(); }
    const PyramidGeometry& geometry() const { return geo_; }
    const ShiftMatrix& shifts() const { return sigma_; }
    int rows() const { return pi_.row_count(); }
    int level() const { return pi_.level(); }

    const Element& tilde(int p, int q) const { return tilde_[p * dim() + q]; }
    bool in_m(int p, int q) const { return pi_.col_of(p) > pi_.col_of(q); }

    // Basis of m as (row position, column position) pairs.
    std::vector<std::pair<int, int>> m_basis() const {
        std::vector<std::pair<int, int>> out;
        for (int p = 0; p < dim(); ++p)
            for (int q = 0; q < dim(); ++q)
                if (in_m(p, q)) out.emplace_back(p, q);
        return out;
    }

    // Replace every m-factor (always rightmost in normal form) by its chi value.
    Element pr_chi(const Element& x) const {
        const SuperAlgebra& A = algebra();
        Element out;
        for (const auto& [m, c] : x.terms()) {
            Rational coeff = c;
            std::size_t cut = m.codes.size();
            while (cut > 0 && A.in_lower(m.codes[cut - 1])) --cut;
            for (std::size_t k = cut; k < m.codes.size() && !coeff.is_zero(); ++k) {
                auto [p, q] = A.positions(m.codes[k]);
                coeff *= chi_plain(p, q, pi_);
            }
            if (coeff.is_zero()) continue;
            out.add(Monomial{CodeVec(m.codes.begin(), m.codes.begin() + cut)}, coeff);
        }
        return out;
    }

    // pr_chi([~e_{p,q}, y]) for ~e_{p,q} in m.
    Element twisted_action(int p, int q, const Element& y) const {
        if (!in_m(p, q)) throw std::invalid_argument("twisted action needs an element of m");
        return pr_chi(algebra().bracket(tilde(p, q), y));
    }

    bool is_m_invariant(const Element& y) const { return !first_non_invariance(y).has_value(); }

    // The first m-basis element acting nontrivially on y, if any.
    std::optional<std::pair<int, int>> first_non_invariance(const Element& y) const {
        for (auto [p, q] : m_basis())
            if (!twisted_action(p, q, y).is_zero()) return std::make_pair(p, q);
        return std::nullopt;
    }

    // T_{i,j;signs}^{(r)}, rows 1-based.
    Element T(int i, int j, const SignVector& signs, int r) const {
        if (i < 1 || i > rows() || j < 1 || j > rows() || r < 0) throw std::out_of_range("T index out of range");
        if (static_cast<int>(signs.size()) != rows()) throw std::invalid_argument("sign vector has wrong length");
        const Entry& e = chains(i, signs, r);
        return e.table[(j - 1) * (e.order + 1) + r];
    }
    Element T(int i, int j, int x, int r) const { return T(i, j, level_signs(rows(), x), r); }

    TruncatedSeries t_series(int i, int j, int x, int R) const {
        TruncatedSeries s(R);
        for (int r = 0; r <= R; ++r) s[r] = T(i, j, x, r);
        return s;
    }

    SeriesMatrix t_matrix(int x, int R) const {
        SeriesMatrix m(rows(), rows(), R);
        for (int i = 1; i <= rows(); ++i)
            for (int j = 1; j <= rows(); ++j) m(i - 1, j - 1) = t_series(i, j, x, R);
        return m;
    }

    // Direct enumeration of the factor chains, without the prefix table.
    Element T_brute(int i, int j, const SignVector& signs, int r) const {
        if (r == 0) return i == j ? Element::scalar(signs[i - 1]) : Element{};
        Element out;
        std::vector<std::pair<int, int>> chain;
        enumerate(i, j, signs, r, chain, out);
        return out;
    }

private:
    int dim() const { return pi_.M() + pi_.N(); }

    using Table = std::vector<Element>;  // index (j-1)*(order+1) + r

    struct Entry {
        int order = -1;
        Table table;
    };

    const Entry& chains(int i, const SignVector& signs, int r) const {
        auto key = std::make_pair(i, signs);
        auto it = cache_.find(key);
        if (it != cache_.end() && it->second.order >= r) return it->second;
        int R = std::max(r, level() + 2);
        Entry& slot = cache_[key];
        slot.order = R;
        slot.table = build(i, signs, R);
        return slot;
    }

    // Prefix table P[deg][pos]: signed chain products whose last factor ends
    // at box pos, with total degree deg.
    Table build(int i, const SignVector& signs, int R) const {
        const SuperAlgebra& A = algebra();
        const int d = dim(), n1 = rows();
        std::vector<std::vector<Element>> P(R + 1, std::vector<Element>(d));
        auto push = [&](Element& target, const Element& prefix, int ip, int jp, const Rational& w) {
            GenCode g = A.code(ip, jp);
            const Element& t = tilde(ip, jp);
            Rational sgn = t.coefficient(Monomial{{g}});  // +-1
            Element prod = A.right_mul(prefix, g);
            Rational cst = t.constant_term();
            if (!cst.is_zero()) prod.add_scaled(prefix, cst * sgn);
            target.add_scaled(prod, w * sgn);
        };
        Element one = Element::scalar(1);
        for (int ip = 0; ip < d; ++ip) {
            if (pi_.row_of(ip) != i) continue;
            for (int jp = 0; jp < d; ++jp) {
                int deg = pi_.col_of(jp) - pi_.col_of(ip) + 1;
                if (deg < 1 || deg > R) continue;
                push(P[deg][jp], one, ip, jp, pi_.parity_of(ip) ? -1 : 1);
            }
        }
        for (int deg = 1; deg <= R; ++deg)
            for (int jp = 0; jp < d; ++jp) {
                if (P[deg][jp].is_zero()) continue;
                const int a = pi_.row_of(jp), c = pi_.col_of(jp), sa = signs[a - 1];
                for (int ip = 0; ip < d; ++ip) {
                    if (pi_.row_of(ip) != a) continue;
                    const int ci = pi_.col_of(ip);
                    if (sa > 0 ? ci <= c : ci > c) continue;
                    for (int kp = 0; kp < d; ++kp) {
                        int step = pi_.col_of(kp) - ci + 1;
                        if (step < 1 || deg + step > R) continue;
                        push(P[deg + step][kp], P[deg][jp], ip, kp, Rational(sa) * (pi_.parity_of(ip) ? -1 : 1));
                    }
                }
            }
        Table out(n1 * (R + 1));
        for (int j = 1; j <= n1; ++j) {
            out[(j - 1) * (R + 1)] = i == j ? Element::scalar(signs[i - 1]) : Element{};
            for (int deg = 1; deg <= R; ++deg)
                for (int jp = 0; jp < d; ++jp)
                    if (pi_.row_of(jp) == j) out[(j - 1) * (R + 1) + deg] += P[deg][jp];
        }
        return out;
    }

    void enumerate(int row, int j, const SignVector& signs, int remaining, std::vector<std::pair<int, int>>& chain,
                   Element& out) const {
        const int d = dim();
        for (int ip = 0; ip < d; ++ip) {
            if (pi_.row_of(ip) != row) continue;
            if (!chain.empty()) {
                const int prev = chain.back().second;
                const int s = signs[pi_.row_of(prev) - 1];
                if (s > 0 ? pi_.col_of(prev) >= pi_.col_of(ip) : pi_.col_of(prev) < pi_.col_of(ip)) continue;
            }
            for (int jp = 0; jp < d; ++jp) {
                int deg = pi_.col_of(jp) - pi_.col_of(ip) + 1;
                if (deg < 1 || deg > remaining) continue;
                chain.emplace_back(ip, jp);
                if (deg == remaining && pi_.row_of(jp) == j) {
                    Rational w = 1;
                    Element prod = Element::scalar(1);
                    for (std::size_t t = 0; t < chain.size(); ++t) {
                        auto [a, b] = chain[t];
                        if (pi_.parity_of(a)) w *= -1;
                        if (t + 1 < chain.size()) w *= signs[pi_.row_of(b) - 1];
                        prod = algebra().multiply(prod, tilde(a, b));
                    }
                    out.add_scaled(prod, w);
                }
                if (deg < remaining) enumerate(pi_.row_of(jp), j, signs, remaining - deg, chain, out);
                chain.pop_back();
            }
        }
    }

    SignedPyramid pi_;
    PyramidGeometry geo_;
    ShiftMatrix sigma_;
    std::vector<Element> tilde_;
    mutable std::map<std::pair<int, SignVector>, Entry> cache_;
};

// ---------------------------------------------------------------------------
// Gauss decomposition T = F D E in block shape mu.

struct GaussFactors {
    std::vector<SeriesMatrix> D, Dp, E, F;  // E[a-1] is mu_a x mu_{a+1}, F[a-1] is mu_{a+1} x mu_a
};

inline GaussFactors gauss_decompose(const SuperAlgebra& A, const SeriesMatrix& T, const std::vector<int>& mu) {
    GaussFactors g;
    SeriesMatrix S = T;
    for (std::size_t a = 0; a < mu.size(); ++a) {
        const int k = mu[a], rest = S.rows() - k;
        SeriesMatrix Da = S.block(0, 0, k, k);
        SeriesMatrix Dinv = inverse(A, Da);
        g.D.push_back(Da);
        g.Dp.push_back(Dinv);
        if (rest == 0) break;
        SeriesMatrix S12 = S.block(0, k, k, rest), S21 = S.block(k, 0, rest, k);
        SeriesMatrix Erow = multiply(A, Dinv, S12);
        SeriesMatrix Fcol = multiply(A, S21, Dinv);
        const int next = mu[a + 1];
        g.E.push_back(Erow.block(0, 0, k, next));
        g.F.push_back(Fcol.block(0, 0, next, k));
        SeriesMatrix S22 = S.block(k, k, rest, rest);
        S22 -= multiply(A, Fcol, S12);
        S = S22;
    }
    return g;
}

enum class GenOracle { Closed, Gauss, Brute };

// Images in U(p) of the parabolic generators for a fixed admissible shape.
class ParabolicImages {
public:
    ParabolicImages(const WSuper& w, AdmissibleShape mu, GenOracle oracle = GenOracle::Closed)
        : w_(w), mu_(std::move(mu)), oracle_(oracle) {
        if (mu_.sigma() != w_.shifts()) throw std::invalid_argument("shape was built for a different shift matrix");
    }

    const AdmissibleShape& shape() const { return mu_; }
    const WSuper& w() const { return w_; }
    GenOracle oracle() const { return oracle_; }

    Element D(int a, int i, int j, int r) const {
        check_block(a, i, j, a, a);
        if (oracle_ == GenOracle::Gauss) return gauss(r).D[a - 1](i - 1, j - 1)[r];
        int off = mu_.offset(a);
        return t(off + i, off + j, off, r);
    }
    Element Dp(int a, int i, int j, int r) const {
        check_block(a, i, j, a, a);
        if (oracle_ == GenOracle::Gauss) return gauss(r).Dp[a - 1](i - 1, j - 1)[r];
        int off = mu_.offset(a);
        return -t(off + i, off + j, off + mu_.size(a), r);
    }
    Element E(int a, int i, int j, int r) const {
        check_block(a, i, j, a, a + 1);
        if (oracle_ == GenOracle::Gauss) return r == 0 ? Element{} : gauss(r).E[a - 1](i - 1, j - 1)[r];
        return t(mu_.offset(a) + i, mu_.offset(a + 1) + j, mu_.offset(a + 1), r);
    }
    Element F(int a, int i, int j, int r) const {
        check_block(a, i, j, a + 1, a);
        if (oracle_ == GenOracle::Gauss) return r == 0 ? Element{} : gauss(r).F[a - 1](i - 1, j - 1)[r];
        return t(mu_.offset(a + 1) + i, mu_.offset(a) + j, mu_.offset(a + 1), r);
    }

    // E_{a,b;i,j}^{(r)} = -[E_{a,b-1;i,k}^{(r - s_{b-1,b})}, E_{b-1;k,j}^{(s_{b-1,b}+1)}].
    Element E(int a, int b, int i, int j, int r, int k) const {
        if (!(1 <= a && a < b && b <= mu_.blocks())) throw std::out_of_range("composite E needs a < b");
        if (b == a + 1) return E(a, i, j, r);
        if (k < 1 || k > mu_.size(b - 1)) throw std::out_of_range("pivot out of range");
        if (r <= mu_.s(a, b)) throw std::out_of_range("composite E below its window");
        auto key = std::make_tuple('E', a, b, i, j, r, k);
        if (auto it = composite_.find(key); it != composite_.end()) return it->second;
        const int sb = mu_.s(b - 1, b);
        Element v = -w_.algebra().bracket(E(a, b - 1, i, k, r - sb, k_for(a, b - 1, k)), E(b - 1, k, j, sb + 1));
        composite_.emplace(key, v);
        return v;
    }

    // F_{b,a;i,j}^{(r)} = -[F_{b-1;i,k}^{(s_{b,b-1}+1)}, F_{b-1,a;k,j}^{(r - s_{b,b-1})}].
    Element F(int b, int a, int i, int j, int r, int k) const {
        if (!(1 <= a && a < b && b <= mu_.blocks())) throw std::out_of_range("composite F needs a < b");
        if (b == a + 1) return F(a, i, j, r);
        if (k < 1 || k > mu_.size(b - 1)) throw std::out_of_range("pivot out of range");
        if (r <= mu_.s(b, a)) throw std::out_of_range("composite F below its window");
        auto key = std::make_tuple('F', a, b, i, j, r, k);
        if (auto it = composite_.find(key); it != composite_.end()) return it->second;
        const int sb = mu_.s(b, b - 1);
        Element v = -w_.algebra().bracket(F(b - 1, i, k, sb + 1), F(b - 1, a, k, j, r - sb, k_for(a, b - 1, k)));
        composite_.emplace(key, v);
        return v;
    }

private:
    // Inner recursions use pivot 1 unless the caller's pivot is still in range.
    int k_for(int a, int b, int k) const {
        if (b == a + 1) return 1;
        return std::min(k, mu_.size(b - 1));
    }

    void check_block(int a, int i, int j, int row_block, int col_block) const {
        if (a < 1 || row_block > mu_.blocks() || col_block > mu_.blocks() || row_block < 1 || col_block < 1)
            throw std::out_of_range("block index out of range");
        if (i < 1 || i > mu_.size(row_block) || j < 1 || j > mu_.size(col_block))
            throw std::out_of_range("inner index out of range");
    }

    Element t(int i, int j, int x, int r) const {
        if (oracle_ == GenOracle::Brute) return w_.T_brute(i, j, level_signs(w_.rows(), x), r);
        return w_.T(i, j, x, r);
    }

    const GaussFactors& gauss(int r) const {
        if (!gauss_ || gauss_order_ < r) {
            gauss_order_ = std::max(r, w_.level() + 2);
            gauss_ = gauss_decompose(w_.algebra(), w_.t_matrix(0, gauss_order_), mu_.parts());
        }
        return *gauss_;
    }

    const WSuper& w_;
    AdmissibleShape mu_;
    GenOracle oracle_;
    mutable std::optional<GaussFactors> gauss_;
    mutable int gauss_order_ = -1;
    mutable std::map<std::tuple<char, int, int, int, int, int, int>, Element> composite_;
};

}  // namespace wyang
