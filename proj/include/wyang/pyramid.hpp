#pragma once

#include "wyang/algebra.hpp"
#include "wyang/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wyang {

class PyramidError : public std::invalid_argument {
public:
    enum class Kind { Empty, BadRow, NotNested, NotMainMode, AmbiguousHeight, BadShift, LevelTooSmall };
    PyramidError(Kind k, const std::string& what) : std::invalid_argument(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct PyramidRow {
    char sign = '-';
    int length = 1;
    int left_offset = 0;
    friend bool operator==(const PyramidRow&, const PyramidRow&) = default;
};

struct Box {
    int row = 0;  // 1-based, top to bottom
    int col = 0;  // 1-based, left to right
    BasisIndex index;
};

// Signed pyramid with cached geometry. Rows are listed top to bottom.
class SignedPyramid {
public:
    static SignedPyramid validate(std::vector<PyramidRow> rows) {
        if (rows.empty()) throw PyramidError(PyramidError::Kind::Empty, "pyramid has no rows");
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.sign != '+' && row.sign != '-')
                throw PyramidError(PyramidError::Kind::BadRow, "row " + std::to_string(r + 1) + ": sign must be + or -");
            if (row.length < 1 || row.left_offset < 0)
                throw PyramidError(PyramidError::Kind::BadRow,
                                   "row " + std::to_string(r + 1) + ": not a contiguous nonempty strip");
        }
        for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
            const auto &a = rows[r], &b = rows[r + 1];
            if (a.left_offset < b.left_offset || a.left_offset + a.length > b.left_offset + b.length) {
                std::ostringstream os;
                os << "intervals [" << a.left_offset + 1 << "," << a.left_offset + a.length << "] and ["
                   << b.left_offset + 1 << "," << b.left_offset + b.length << "] not nested";
                throw PyramidError(PyramidError::Kind::NotNested, os.str());
            }
        }
        return SignedPyramid(std::move(rows));
    }

    const std::vector<PyramidRow>& rows() const { return rows_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    int level() const { return level_; }
    int M() const { return M_; }
    int N() const { return N_; }
    const SuperAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const SuperAlgebra> algebra_ptr() const { return algebra_; }

    // Boxes indexed by algebra position (barred first).
    const std::vector<Box>& boxes() const { return boxes_; }
    const Box& box(int pos) const { return boxes_[pos]; }
    int row_of(int pos) const { return boxes_[pos].row; }
    int col_of(int pos) const { return boxes_[pos].col; }
    int parity_of(int pos) const { return boxes_[pos].index.parity(); }
    // Position of the box in a given row and column, or -1.
    int at(int row, int col) const {
        auto it = grid_.find({row, col});
        return it == grid_.end() ? -1 : it->second;
    }
    int position(const BasisIndex& i) const { return algebra_->position(i); }

    int row_length(int row) const { return rows_[row - 1].length; }
    int left_column(int row) const { return rows_[row - 1].left_offset - base_ + 1; }
    int right_column(int row) const { return left_column(row) + row_length(row) - 1; }
    int column_height(int c) const { return static_cast<int>(columns_[c - 1].size()); }
    int super_column_height(int c) const {
        int s = 0;
        for (int p : columns_[c - 1]) s += parity_of(p) ? -1 : 1;
        return s;
    }
    // Positions in column c, top to bottom.
    const std::vector<int>& column(int c) const { return columns_[c - 1]; }

    bool main_mode() const {
        if (rows_[0].sign != '+') return false;
        for (std::size_t r = 1; r < rows_.size(); ++r)
            if (rows_[r].sign == '+') return false;
        return true;
    }
    void require_main_mode() const {
        if (!main_mode())
            throw PyramidError(PyramidError::Kind::NotMainMode, "operation needs the top row to be the only + row");
    }

    friend bool operator==(const SignedPyramid& a, const SignedPyramid& b) { return a.rows_ == b.rows_; }

private:
    explicit SignedPyramid(std::vector<PyramidRow> rows) : rows_(std::move(rows)) {
        base_ = rows_.back().left_offset;
        level_ = rows_.back().length;
        columns_.assign(level_, {});
        struct Raw {
            int row, col;
            bool plus;
        };
        std::vector<Raw> order;
        for (int c = 1; c <= level_; ++c)
            for (int r = 1; r <= row_count(); ++r)
                if (left_column(r) <= c && c <= right_column(r)) order.push_back({r, c, rows_[r - 1].sign == '+'});
        for (const auto& b : order) (b.plus ? M_ : N_)++;
        boxes_.resize(order.size());
        int nb = 0, nu = 0;
        std::vector<int> cols(order.size());
        for (const auto& b : order) {
            BasisIndex idx = b.plus ? BasisIndex::bar(++nb) : BasisIndex::plain(++nu);
            int pos = b.plus ? idx.ordinal - 1 : M_ + idx.ordinal - 1;
            boxes_[pos] = Box{b.row, b.col, idx};
            cols[pos] = b.col;
            grid_[{b.row, b.col}] = pos;
            columns_[b.col - 1].push_back(pos);
        }
        algebra_ = std::make_shared<const SuperAlgebra>(M_, N_, cols);
    }

    std::vector<PyramidRow> rows_;
    int base_ = 0;
    int level_ = 0;
    int M_ = 0, N_ = 0;
    std::vector<Box> boxes_;
    std::map<std::pair<int, int>, int> grid_;
    std::vector<std::vector<int>> columns_;
    std::shared_ptr<const SuperAlgebra> algebra_;
};

// ---------------------------------------------------------------------------
// Shift matrices and truncation data

struct ShiftMatrix {
    std::vector<std::vector<int>> s;

    int size() const { return static_cast<int>(s.size()); }
    // 1-based access.
    int operator()(int i, int j) const { return s[i - 1][j - 1]; }

    void validate() const {
        const int n = size();
        if (n == 0) throw PyramidError(PyramidError::Kind::BadShift, "empty shift matrix");
        for (const auto& row : s)
            if (static_cast<int>(row.size()) != n) throw PyramidError(PyramidError::Kind::BadShift, "shift matrix not square");
        for (int i = 1; i <= n; ++i) {
            if ((*this)(i, i) != 0) throw PyramidError(PyramidError::Kind::BadShift, "nonzero diagonal");
            for (int j = 1; j <= n; ++j)
                if ((*this)(i, j) < 0) throw PyramidError(PyramidError::Kind::BadShift, "negative entry");
        }
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    if (std::abs(i - j) + std::abs(j - k) == std::abs(i - k) &&
                        (*this)(i, j) + (*this)(j, k) != (*this)(i, k)) {
                        std::ostringstream os;
                        os << "additivity fails at (" << i << "," << j << "," << k << ")";
                        throw PyramidError(PyramidError::Kind::BadShift, os.str());
                    }
    }

    ShiftMatrix transpose() const {
        ShiftMatrix t{s};
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) t.s[i][j] = s[j][i];
        return t;
    }

    friend bool operator==(const ShiftMatrix&, const ShiftMatrix&) = default;
};

struct TruncationSpec {
    ShiftMatrix sigma;
    int level = 0;

    int n_plus_1() const { return sigma.size(); }
    int row_length(int i) const {
        const int n1 = n_plus_1();
        return level - sigma(i, n1) - sigma(n1, i);
    }
    std::vector<int> row_lengths() const {
        std::vector<int> p;
        for (int i = 1; i <= n_plus_1(); ++i) p.push_back(row_length(i));
        return p;
    }
    void validate() const {
        sigma.validate();
        const int n1 = n_plus_1();
        if (level < sigma(1, n1) + sigma(n1, 1))
            throw PyramidError(PyramidError::Kind::LevelTooSmall, "level below s(1,n+1)+s(n+1,1)");
    }
    friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

// Indentation matrix of any pyramid (sign-agnostic).
inline ShiftMatrix indentation_matrix(const SignedPyramid& pi) {
    const int n1 = pi.row_count();
    ShiftMatrix m{std::vector<std::vector<int>>(n1, std::vector<int>(n1, 0))};
    for (int i = 1; i <= n1; ++i)
        for (int j = 1; j <= n1; ++j) {
            if (i > j)
                m.s[i - 1][j - 1] = pi.left_column(j) - pi.left_column(i);
            else if (i < j)
                m.s[i - 1][j - 1] = pi.right_column(j) - pi.right_column(i);
        }
    return m;
}

inline TruncationSpec to_shift_and_level(const SignedPyramid& pi) {
    pi.require_main_mode();
    return TruncationSpec{indentation_matrix(pi), pi.level()};
}

inline SignedPyramid from_shift_and_level(const TruncationSpec& spec) {
    spec.validate();
    const int n1 = spec.n_plus_1();
    std::vector<PyramidRow> rows;
    for (int i = 1; i <= n1; ++i) {
        int len = spec.row_length(i);
        if (len < 1)
            throw PyramidError(PyramidError::Kind::LevelTooSmall, "row " + std::to_string(i) + " would be empty");
        rows.push_back(PyramidRow{i == 1 ? '+' : '-', len, spec.sigma(n1, i)});
    }
    return SignedPyramid::validate(std::move(rows));
}

// ---------------------------------------------------------------------------
// e(pi), h(pi) and the good-grading axioms

inline Element build_e(const SignedPyramid& pi) {
    Element e;
    for (int pos = 0; pos < pi.M() + pi.N(); ++pos) {
        const Box& b = pi.box(pos);
        int right = pi.at(b.row, b.col + 1);
        if (right >= 0) e += pi.algebra().unit(pos, right);
    }
    return e;
}

// Diagonal of h(pi) indexed by algebra position: minus the centred x-coordinate.
inline std::vector<long long> build_h(const SignedPyramid& pi) {
    std::vector<long long> h;
    for (const Box& b : pi.boxes()) h.push_back(static_cast<long long>(pi.level()) + 1 - 2 * b.col);
    return h;
}

struct GradingReport {
    bool ok = true;
    int first_failure = 0;  // axiom number 1..5, or 6 for evenness
    std::vector<std::string> failures;

    void fail(int axiom, std::string msg) {
        if (ok) first_failure = axiom;
        ok = false;
        failures.push_back(std::move(msg));
    }
};

inline GradingReport check_good_grading(const SignedPyramid& pi, std::optional<std::vector<Rational>> h_override = {}) {
    const SuperAlgebra& A = pi.algebra();
    const int d = A.dim();
    std::vector<Rational> h;
    if (h_override) {
        h = *h_override;
    } else {
        for (long long v : build_h(pi)) h.emplace_back(v);
    }
    GradingReport rep;
    Element e = build_e(pi);
    Element hel;
    for (int p = 0; p < d; ++p) hel += A.unit(p, p, h[p]);

    if (A.bracket(hel, e) != e * Rational(2)) rep.fail(1, "[h,e] != 2e");

    std::map<long long, std::vector<GenCode>> pieces;
    bool integral = true;
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            Rational ev = h[p] - h[q];
            if (!ev.is_integer()) {
                integral = false;
                continue;
            }
            pieces[std::stoll(ev.str())].push_back(A.code(p, q));
        }
    if (!integral) rep.fail(2, "ad h has non-integer eigenvalues");

    Element identity;
    for (int p = 0; p < d; ++p) identity += A.unit(p, p);
    if (!A.bracket(hel, identity).is_zero()) rep.fail(3, "center not in g(0)");

    for (const auto& [j, basis] : pieces) {
        auto target_it = pieces.find(j + 2);
        std::vector<GenCode> target = target_it == pieces.end() ? std::vector<GenCode>{} : target_it->second;
        std::map<GenCode, std::size_t> col_of;
        for (std::size_t k = 0; k < target.size(); ++k) col_of[target[k]] = k;
        RationalMatrix mat;
        bool escaped = false;
        for (GenCode g : basis) {
            std::vector<Rational> row(target.size());
            Element img = A.bracket(e, Element::monomial(Monomial{{g}}));
            for (const auto& [m, c] : img.terms()) {
                auto it = m.codes.size() == 1 ? col_of.find(m.codes[0]) : col_of.end();
                if (it == col_of.end()) {
                    escaped = true;
                    continue;
                }
                row[it->second] = c;
            }
            mat.push_back(std::move(row));
        }
        if (escaped) rep.fail(1, "ad e does not raise degree by 2 on g(" + std::to_string(j) + ")");
        int rk = target.empty() ? 0 : rank(mat);
        if (j <= -1 && rk != static_cast<int>(basis.size()))
            rep.fail(4, "ad e not injective on g(" + std::to_string(j) + ")");
        if (j >= -1 && rk != static_cast<int>(target.size()))
            rep.fail(5, "ad e not surjective onto g(" + std::to_string(j + 2) + ")");
    }
    // Surjectivity onto pieces whose source g(j) is empty.
    for (const auto& [j, basis] : pieces)
        if (j - 2 >= -1 && !pieces.count(j - 2) && !basis.empty())
            rep.fail(5, "ad e not surjective onto g(" + std::to_string(j) + ")");
    for (const auto& [j, basis] : pieces)
        if (j % 2 != 0) {
            rep.fail(6, "grading is not even: g(" + std::to_string(j) + ") != 0");
            break;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// rho, twisted units and the character

struct PyramidGeometry {
    std::vector<int> rho;  // rho[c-1] for column c
    int super_height = 0;
};

inline PyramidGeometry rho(const SignedPyramid& pi) {
    pi.require_main_mode();
    int tallest = 0;
    for (int c = 1; c <= pi.level(); ++c) tallest = std::max(tallest, pi.column_height(c));
    std::optional<int> h;
    for (int c = 1; c <= pi.level(); ++c) {
        if (pi.column_height(c) != tallest) continue;
        int q = pi.super_column_height(c);
        if (h && *h != q) throw PyramidError(PyramidError::Kind::AmbiguousHeight, "tallest columns disagree on super height");
        h = q;
    }
    PyramidGeometry g;
    g.super_height = *h;
    g.rho.assign(pi.level(), 0);
    int tail = 0;
    for (int c = pi.level(); c >= 1; --c) {
        tail += pi.super_column_height(c);
        g.rho[c - 1] = *h - tail;
    }
    return g;
}

inline Element tilde_e(int i, int j, const SignedPyramid& pi, const PyramidGeometry& geo) {
    const int ci = pi.col_of(i), cj = pi.col_of(j);
    Element out = pi.algebra().unit(i, j);
    if (i == j) out.add(Monomial{}, Rational(pi.parity_of(i) ? -geo.rho[ci - 1] : geo.rho[ci - 1]));
    if ((cj - ci) % 2 != 0) out *= Rational(-1);
    return out;
}
inline Element tilde_e(const BasisIndex& i, const BasisIndex& j, const SignedPyramid& pi) {
    return tilde_e(pi.position(i), pi.position(j), pi, rho(pi));
}

// chi on the twisted unit ~e_{ij}, defined for col(i) > col(j).
inline Rational chi(int i, int j, const SignedPyramid& pi) {
    if (pi.col_of(i) <= pi.col_of(j)) throw std::invalid_argument("chi is only defined on the negative part");
    if (pi.row_of(i) == pi.row_of(j) && pi.col_of(i) == pi.col_of(j) + 1) return pi.parity_of(i) ? 1 : -1;
    return 0;
}
inline Rational chi(const BasisIndex& i, const BasisIndex& j, const SignedPyramid& pi) {
    return chi(pi.position(i), pi.position(j), pi);
}

// chi on the plain unit e_{ij} (the twisted unit differs by the column sign).
inline Rational chi_plain(int i, int j, const SignedPyramid& pi) {
    Rational v = chi(i, j, pi);
    return ((pi.col_of(i) - pi.col_of(j)) % 2 != 0) ? -v : v;
}

inline int kazhdan_degree(const Element& x, const SignedPyramid& pi) { return pi.algebra().kazhdan_degree(x); }

// ---------------------------------------------------------------------------
// Centralizer of e(pi)

struct CentralizerElement {
    int i = 0, j = 0, r = 0;
    Element value;
    int degree = 0;
    int parity = 0;
};

inline std::vector<CentralizerElement> centralizer_basis(const SignedPyramid& pi) {
    ShiftMatrix s = indentation_matrix(pi);
    const int n1 = pi.row_count();
    std::vector<CentralizerElement> out;
    for (int i = 1; i <= n1; ++i)
        for (int j = 1; j <= n1; ++j) {
            const int lo = s(i, j), hi = s(i, j) + pi.row_length(std::min(i, j));
            for (int r = lo + 1; r <= hi; ++r) {
                CentralizerElement c{i, j, r, {}, r, 0};
                for (int h = 0; h < pi.M() + pi.N(); ++h) {
                    if (pi.row_of(h) != i) continue;
                    int k = pi.at(j, pi.col_of(h) + r - 1);
                    if (k >= 0) c.value += pi.algebra().unit(h, k);
                }
                c.parity = (pi.rows()[i - 1].sign != pi.rows()[j - 1].sign) ? 1 : 0;
                c.degree = pi.algebra().kazhdan_degree(c.value);
                out.push_back(std::move(c));
            }
        }
    return out;
}

}  // namespace wyang
