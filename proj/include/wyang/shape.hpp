#pragma once

#include "wyang/pyramid.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wyang {

// Composition mu = (1 | mu_2, ..., mu_{m+1}) of n+1 whose diagonal blocks of
// the shift matrix vanish. Blocks are 1-based throughout.
class AdmissibleShape {
public:
    AdmissibleShape(std::vector<int> mu, ShiftMatrix sigma) : mu_(std::move(mu)), sigma_(std::move(sigma)) {
        if (mu_.empty() || mu_[0] != 1) throw std::invalid_argument("shape must start with mu_1 = 1");
        for (int v : mu_)
            if (v < 1) throw std::invalid_argument("shape parts must be positive");
        if (std::accumulate(mu_.begin(), mu_.end(), 0) != sigma_.size())
            throw std::invalid_argument("shape does not sum to the shift matrix size");
        for (int a = 1; a <= blocks(); ++a)
            for (int i = first(a); i <= last(a); ++i)
                for (int j = first(a); j <= last(a); ++j)
                    if (sigma_(i, j) != 0) {
                        std::ostringstream os;
                        os << "shape " << str() << " is not admissible: s(" << i << "," << j << ") != 0";
                        throw std::invalid_argument(os.str());
                    }
    }

    static AdmissibleShape minimal(const ShiftMatrix& sigma) {
        std::vector<int> mu{1};
        for (int i = 2; i <= sigma.size(); ++i) {
            if (mu.size() > 1 && sigma(i - 1, i) == 0 && sigma(i, i - 1) == 0)
                ++mu.back();
            else
                mu.push_back(1);
        }
        return AdmissibleShape(mu, sigma);
    }

    static AdmissibleShape parse(const std::string& text, const ShiftMatrix& sigma) {
        std::vector<int> mu;
        std::string tok;
        for (char c : text + ",") {
            if (c == ',' || c == '|') {
                if (!tok.empty()) mu.push_back(std::stoi(tok));
                tok.clear();
            } else if (c != ' ') {
                tok += c;
            }
        }
        return AdmissibleShape(mu, sigma);
    }

    const std::vector<int>& parts() const { return mu_; }
    const ShiftMatrix& sigma() const { return sigma_; }
    int blocks() const { return static_cast<int>(mu_.size()); }
    int m() const { return blocks() - 1; }
    int size(int a) const { return mu_[a - 1]; }
    // Row offset mu_1 + ... + mu_{a-1}.
    int offset(int a) const { return std::accumulate(mu_.begin(), mu_.begin() + (a - 1), 0); }
    int first(int a) const { return offset(a) + 1; }
    int last(int a) const { return offset(a) + size(a); }
    int s(int a, int b) const { return sigma_(last(a), last(b)); }
    int p(int a, int level) const {
        const int n1 = sigma_.size();
        return level - sigma_(last(a), n1) - sigma_(n1, last(a));
    }
    bool is_minimal() const { return blocks() == minimal(sigma_).blocks(); }

    std::string str() const {
        std::string out = "(" + std::to_string(mu_[0]) + "|";
        for (std::size_t k = 1; k < mu_.size(); ++k) out += (k > 1 ? "," : "") + std::to_string(mu_[k]);
        return out + ")";
    }

    friend bool operator==(const AdmissibleShape& x, const AdmissibleShape& y) {
        return x.mu_ == y.mu_ && x.sigma_ == y.sigma_;
    }

private:
    std::vector<int> mu_;
    ShiftMatrix sigma_;
};

// Yangian-side parity of block a: 0 for the first block, 1 otherwise.
inline int block_parity(int a) { return a == 1 ? 0 : 1; }

}  // namespace wyang
