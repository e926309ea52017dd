#pragma once

#include "wyang/algebra.hpp"
#include "wyang/linalg.hpp"

#include <stdexcept>
#include <vector>

namespace wyang {

// sum_{r=0}^{R} c_r u^{-r} with coefficients in U(g).
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order = 0) : c_(order + 1) {}
    static TruncatedSeries scalar(const Rational& v, int order) {
        TruncatedSeries s(order);
        s.c_[0] = Element::scalar(v);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Element& operator[](int r) { return c_[r]; }
    const Element& operator[](int r) const { return c_[r]; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        for (int r = 0; r <= std::min(order(), o.order()); ++r) c_[r] += o.c_[r];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        for (int r = 0; r <= std::min(order(), o.order()); ++r) c_[r] -= o.c_[r];
        return *this;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Element> c_;
};

inline TruncatedSeries multiply(const SuperAlgebra& A, const TruncatedSeries& x, const TruncatedSeries& y) {
    const int R = std::min(x.order(), y.order());
    TruncatedSeries out(R);
    for (int a = 0; a <= R; ++a) {
        if (x[a].is_zero()) continue;
        for (int b = 0; a + b <= R; ++b)
            if (!y[b].is_zero()) out[a + b] += A.multiply(x[a], y[b]);
    }
    return out;
}

// Dense matrix of truncated series, 0-based.
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(int rows, int cols, int order) : rows_(rows), cols_(cols), order_(order), e_(rows * cols, TruncatedSeries(order)) {}

    static SeriesMatrix identity(int n, int order) {
        SeriesMatrix m(n, n, order);
        for (int i = 0; i < n; ++i) m(i, i)[0] = Element::scalar(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int order() const { return order_; }
    TruncatedSeries& operator()(int i, int j) { return e_[i * cols_ + j]; }
    const TruncatedSeries& operator()(int i, int j) const { return e_[i * cols_ + j]; }

    SeriesMatrix block(int r0, int c0, int nr, int nc) const {
        SeriesMatrix b(nr, nc, order_);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    SeriesMatrix& operator-=(const SeriesMatrix& o) {
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    SeriesMatrix& operator+=(const SeriesMatrix& o) {
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    int rows_ = 0, cols_ = 0, order_ = 0;
    std::vector<TruncatedSeries> e_;
};

inline SeriesMatrix multiply(const SuperAlgebra& A, const SeriesMatrix& x, const SeriesMatrix& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("series matrix shape mismatch");
    SeriesMatrix out(x.rows(), y.cols(), std::min(x.order(), y.order()));
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j)
            for (int k = 0; k < x.cols(); ++k) out(i, j) += multiply(A, x(i, k), y(k, j));
    return out;
}

// Inverse of a square series matrix whose u^0 part is an invertible scalar
// matrix C: with M = C + N, M^{-1} = sum_k (-C^{-1} N)^k C^{-1}.
inline SeriesMatrix inverse(const SuperAlgebra& A, const SeriesMatrix& m) {
    const int n = m.rows(), R = m.order();
    RationalMatrix c(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Element& v = m(i, j)[0];
            if (!v.is_scalar()) throw std::domain_error("series matrix has a non-scalar constant part");
            c[i][j] = v.constant_term();
        }
    RationalMatrix ci = inverse(c);
    SeriesMatrix cinv(n, n, R);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cinv(i, j)[0] = Element::scalar(ci[i][j]);
    SeriesMatrix k(n, n, R);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 1; r <= R; ++r) {
                Element acc;
                for (int l = 0; l < n; ++l) acc.add_scaled(m(l, j)[r], -ci[i][l]);
                k(i, j)[r] = acc;
            }
    SeriesMatrix term = cinv, out = cinv;
    for (int step = 1; step <= R; ++step) {
        term = multiply(A, k, term);
        out += term;
    }
    return out;
}

}  // namespace wyang
