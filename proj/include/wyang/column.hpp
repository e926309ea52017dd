#pragma once

#include "wyang/wsuper.hpp"
#include "wyang/yangian.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wyang {

// The pyramid with one outer column removed, and the maps relating U(p) of
// the two pyramids:
//  * embed: U(p-dot) -> U(p), sending ~e of the smaller pyramid to ~e of the
//    same boxes;
//  * gl_unit: the shifted unit ~e_{k,l} of gl_beta, realized on the boxes of
//    the removed column (k-th box from the top);
//  * psi: U(p) -> U(p-dot) (x) U(gl_beta), realized inside U(p) because the
//    two factors act on disjoint boxes and supercommute.
class ColumnRemoval {
public:
    ColumnRemoval(const SignedPyramid& pi, Side side) : pi_(pi), side_(side) {
        pi_.require_main_mode();
        const int ell = pi_.level();
        if (ell < 2) throw std::domain_error("cannot remove a column from a pyramid of level < 2");
        removed_col_ = side == Side::R ? ell : 1;
        adjacent_col_ = side == Side::R ? ell - 1 : 2;

        std::vector<PyramidRow> rows;
        const int right = pi_.right_column(pi_.row_count());
        for (int i = 1; i <= pi_.row_count(); ++i) {
            PyramidRow row = pi_.rows()[i - 1];
            if (side == Side::R) {
                if (pi_.right_column(i) == right) row.length -= 1;
            } else {
                if (pi_.left_column(i) == 1)
                    row.length -= 1;
                else
                    row.left_offset -= 1;
            }
            if (row.length <= 0) throw std::domain_error("removing the column deletes a whole row");
            rows.push_back(row);
        }
        dot_ = std::make_unique<SignedPyramid>(SignedPyramid::validate(rows));

        beta_ = pi_.column_height(removed_col_);
        const int n1 = pi_.row_count();
        for (int k = 1; k <= beta_; ++k) {
            const int row = n1 - beta_ + k;
            int p = pi_.at(row, removed_col_), q = pi_.at(row, adjacent_col_);
            if (p < 0 || q < 0) throw std::domain_error("removed column is not the bottom block of rows");
            if (pi_.parity_of(p) != 1) throw std::domain_error("removed column contains the + row");
            removed_.push_back(p);
            adjacent_.push_back(q);
        }
        const int shift = side == Side::R ? 0 : 1;
        for (int p = 0; p < dot_->M() + dot_->N(); ++p) {
            int q = pi_.at(dot_->row_of(p), dot_->col_of(p) + shift);
            if (q < 0) throw std::logic_error("box of the smaller pyramid has no partner");
            map_.push_back(q);
        }
        geo_ = rho(pi_);
        dot_geo_ = rho(*dot_);
    }

    const SignedPyramid& pyramid() const { return pi_; }
    const SignedPyramid& dot() const { return *dot_; }
    Side side() const { return side_; }
    int beta() const { return beta_; }
    // Position in pi of the k-th removed box (k = 1..beta), and of its
    // neighbour in the adjacent column.
    int removed(int k) const { return removed_[k - 1]; }
    int adjacent(int k) const { return adjacent_[k - 1]; }
    int image_of(int dot_position) const { return map_[dot_position]; }

    Element embed(const Element& x) const {
        const SuperAlgebra& Ad = dot_->algebra();
        const SuperAlgebra& A = pi_.algebra();
        std::vector<Element> unit_image(Ad.generator_count());
        for (GenCode g = 0; g < Ad.generator_count(); ++g) {
            auto [p, q] = Ad.positions(g);
            int P = map_[p], Q = map_[q];
            Element img = A.unit(P, Q);
            if (p == q) {
                const int par = pi_.parity_of(P);
                Rational c = Rational(geo_.rho[pi_.col_of(P) - 1]) - Rational(dot_geo_.rho[dot_->col_of(p) - 1]);
                img += Element::scalar(par ? -c : c);
            }
            unit_image[g] = img;
        }
        return substitute(x, A, [&](GenCode g) { return unit_image[g]; });
    }

    Element gl_unit(int k, int l) const {
        const int n = pi_.row_count() - 1;
        Element e = pi_.algebra().unit(removed(k), removed(l));
        if (k == l) e += Element::scalar(n - 1 - beta_);
        return e;
    }

    Element psi(const Element& x) const {
        const SuperAlgebra& A = pi_.algebra();
        const int n = pi_.row_count() - 1;
        return substitute(x, A, [&](GenCode g) -> Element {
            if (A.in_lower(g)) throw std::invalid_argument("psi is defined on U(p) only");
            auto [p, q] = A.positions(g);
            const int cp = pi_.col_of(p), cq = pi_.col_of(q);
            const bool p_in = cp == removed_col_, q_in = cq == removed_col_;
            if (p_in && q_in) {
                Element e = A.unit(p, q);
                if (p == q) {
                    Rational c = Rational(n - 1 - beta_) - Rational(pi_.parity_of(p) ? -geo_.rho[cp - 1] : geo_.rho[cp - 1]);
                    e += Element::scalar(c);
                }
                return e;
            }
            if (p_in != q_in) return Element{};
            return A.unit(p, q);
        });
    }

    // Sets every ~e_{k,l} of gl_beta to zero in a realized tensor.
    Element counit(const Element& x) const {
        const SuperAlgebra& A = pi_.algebra();
        const int n = pi_.row_count() - 1;
        return substitute(x, A, [&](GenCode g) -> Element {
            auto [p, q] = A.positions(g);
            if (pi_.col_of(p) == removed_col_ && pi_.col_of(q) == removed_col_)
                return p == q ? Element::scalar(-(n - 1 - beta_)) : Element{};
            return A.unit(p, q);
        });
    }

private:
    template <class F>
    static Element substitute(const Element& x, const SuperAlgebra& A, F&& image) {
        Element out;
        for (const auto& [m, c] : x.terms()) {
            Element acc = Element::scalar(c);
            for (GenCode g : m.codes) {
                acc = A.multiply(acc, image(g));
                if (acc.is_zero()) break;
            }
            out += acc;
        }
        return out;
    }

    SignedPyramid pi_;
    Side side_;
    int removed_col_ = 0, adjacent_col_ = 0, beta_ = 0;
    std::unique_ptr<SignedPyramid> dot_;
    std::vector<int> removed_, adjacent_, map_;
    PyramidGeometry geo_, dot_geo_;
};

// Outcome of the column-removal identities: instance count and a readable
// description of each failure.
struct RecursionReport {
    int instances = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Checks the recursions expressing D, E, F of pi through those of the
// pyramid with one column removed, for r = 1..rmax and every h = 1..beta.
inline RecursionReport column_removal_check(const SignedPyramid& pi, const AdmissibleShape& mu, Side side, int rmax) {
    ColumnRemoval cr(pi, side);
    WSuper w(pi), wd(cr.dot());
    if (!(mu.sigma() == w.shifts())) throw std::invalid_argument("shape was built for a different pyramid");
    const BabyData bd = baby_data(mu, side);
    if (bd.beta != cr.beta()) throw std::domain_error("removed column height differs from the last block size");
    if (!(bd.dot_sigma == wd.shifts())) throw std::logic_error("shift matrix of the smaller pyramid does not match the baby rule");
    AdmissibleShape mud(mu.parts(), wd.shifts());
    ParabolicImages img(w, mu), dimg(wd, mud);
    const SuperAlgebra& A = w.algebra();
    const int m = mu.blocks() - 1, beta = cr.beta();

    RecursionReport rep;
    auto record = [&](bool ok, const std::string& what) {
        ++rep.instances;
        if (!ok) rep.failures.push_back(what);
    };
    auto tl = [&](int p, int q) { return w.tilde(p, q); };
    auto name = [](const char* f, int a, int i, int j, int r, int h) {
        std::ostringstream os;
        os << f << "_{" << a << ";" << i << "," << j << "}^{(" << r << ")} h=" << h;
        return os.str();
    };
    // Ddot^{(r-1)} with Ddot^{(0)} = identity.
    auto dlow = [&](int a, int i, int j, int r) {
        if (r == 0) return Element::scalar(i == j ? 1 : 0);
        return cr.embed(dimg.D(a, i, j, r));
    };

    for (int a = 1; a <= m + 1; ++a)
        for (int i = 1; i <= mu.size(a); ++i)
            for (int j = 1; j <= mu.size(a); ++j)
                for (int r = 1; r <= rmax; ++r) {
                    Element lhs = img.D(a, i, j, r), base = cr.embed(dimg.D(a, i, j, r));
                    if (a != m + 1) {
                        record(lhs == base, name("D", a, i, j, r, 0));
                        continue;
                    }
                    for (int h = 1; h <= beta; ++h) {
                        Element rhs = base;
                        if (side == Side::R) {
                            for (int k = 1; k <= beta; ++k) rhs -= A.multiply(dlow(a, i, k, r - 1), tl(cr.removed(k), cr.removed(j)));
                            rhs += A.bracket(dlow(a, i, h, r - 1), tl(cr.adjacent(h), cr.removed(j)));
                        } else {
                            for (int k = 1; k <= beta; ++k) rhs -= A.multiply(tl(cr.removed(i), cr.removed(k)), dlow(a, k, j, r - 1));
                            rhs += A.bracket(tl(cr.removed(i), cr.adjacent(h)), dlow(a, h, j, r - 1));
                        }
                        record(lhs == rhs, name("D", a, i, j, r, h));
                    }
                }

    for (int a = 1; a <= m; ++a) {
        // E on side R and F on side L pick up the correction at a = m.
        for (int i = 1; i <= mu.size(a); ++i)
            for (int j = 1; j <= mu.size(a + 1); ++j)
                for (int r = mu.s(a, a + 1) + 1; r <= rmax; ++r) {
                    Element lhs = img.E(a, i, j, r), base = cr.embed(dimg.E(a, i, j, r));
                    if (side == Side::L || a != m) {
                        record(lhs == base, name("E", a, i, j, r, 0));
                        continue;
                    }
                    for (int h = 1; h <= beta; ++h) {
                        Element rhs = base;
                        for (int k = 1; k <= beta; ++k) rhs -= A.multiply(cr.embed(dimg.E(a, i, k, r - 1)), tl(cr.removed(k), cr.removed(j)));
                        rhs += A.bracket(cr.embed(dimg.E(a, i, h, r - 1)), tl(cr.adjacent(h), cr.removed(j)));
                        record(lhs == rhs, name("E", a, i, j, r, h));
                    }
                }
        for (int i = 1; i <= mu.size(a + 1); ++i)
            for (int j = 1; j <= mu.size(a); ++j)
                for (int r = mu.s(a + 1, a) + 1; r <= rmax; ++r) {
                    Element lhs = img.F(a, i, j, r), base = cr.embed(dimg.F(a, i, j, r));
                    if (side == Side::R || a != m) {
                        record(lhs == base, name("F", a, i, j, r, 0));
                        continue;
                    }
                    for (int h = 1; h <= beta; ++h) {
                        Element rhs = base;
                        for (int k = 1; k <= beta; ++k) rhs -= A.multiply(tl(cr.removed(i), cr.removed(k)), cr.embed(dimg.F(a, k, j, r - 1)));
                        rhs += A.bracket(tl(cr.removed(i), cr.adjacent(h)), cr.embed(dimg.F(a, h, j, r - 1)));
                        record(lhs == rhs, name("F", a, i, j, r, h));
                    }
                }
    }
    return rep;
}

}  // namespace wyang
