#pragma once

#include "wyang/rational.hpp"

#include <utility>
#include <vector>

namespace wyang {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Rank by Gaussian elimination over Q. Input is taken by value and destroyed.
inline int rank(RationalMatrix a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return static_cast<int>(r);
}

// Inverse of a square matrix over Q; throws on singular input.
inline RationalMatrix inverse(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix a(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[c]);
        Rational inv = Rational(1) / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (std::size_t k = 0; k < 2 * n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    RationalMatrix out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

}  // namespace wyang
