#pragma once

#include "wyang/rational.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wyang {

// Index of the defining basis of C^{M|N}. Barred indices precede unbarred.
struct BasisIndex {
    bool barred = false;
    int ordinal = 1;

    static BasisIndex bar(int k) { return {true, k}; }
    static BasisIndex plain(int k) { return {false, k}; }

    int parity() const { return barred ? 0 : 1; }

    std::string str() const { return (barred ? "b" : "") + std::to_string(ordinal); }
    static BasisIndex parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty basis index");
        bool b = s[0] == 'b';
        int k = std::stoi(b ? s.substr(1) : s);
        if (k < 1) throw std::invalid_argument("basis index ordinal must be positive: " + s);
        return {b, k};
    }

    friend bool operator==(const BasisIndex& a, const BasisIndex& b) {
        return a.barred == b.barred && a.ordinal == b.ordinal;
    }
    friend bool operator!=(const BasisIndex& a, const BasisIndex& b) { return !(a == b); }
    friend bool operator<(const BasisIndex& a, const BasisIndex& b) {
        if (a.barred != b.barred) return a.barred;
        return a.ordinal < b.ordinal;
    }
};

// Matrix unit e_{row,col}.
struct GeneratorId {
    BasisIndex row;
    BasisIndex col;
    int parity() const { return (row.parity() + col.parity()) & 1; }
    friend bool operator==(const GeneratorId& a, const GeneratorId& b) {
        return a.row == b.row && a.col == b.col;
    }
};

using GenCode = std::uint16_t;

// Polled by long products; returning true abandons the computation.
using StopFn = std::function<bool()>;

struct Interrupted : std::runtime_error {
    Interrupted() : std::runtime_error("computation interrupted") {}
};

// Vector of codes with inline storage for short monomials.
class CodeVec {
public:
    static constexpr std::size_t kInline = 15;
    using value_type = GenCode;
    using iterator = GenCode*;
    using const_iterator = const GenCode*;
    using reverse_iterator = std::reverse_iterator<iterator>;
    using const_reverse_iterator = std::reverse_iterator<const_iterator>;

    CodeVec() = default;
    CodeVec(std::initializer_list<GenCode> il) { assign(il.begin(), il.end()); }
    CodeVec(const std::vector<GenCode>& v) { assign(v.begin(), v.end()); }  // NOLINT(google-explicit-constructor)
    template <class It>
    CodeVec(It first, It last) {
        assign(first, last);
    }

    std::size_t size() const { return big_ ? heap_.size() : n_; }
    bool empty() const { return size() == 0; }
    GenCode* data() { return big_ ? heap_.data() : inl_.data(); }
    const GenCode* data() const { return big_ ? heap_.data() : inl_.data(); }
    iterator begin() { return data(); }
    iterator end() { return data() + size(); }
    const_iterator begin() const { return data(); }
    const_iterator end() const { return data() + size(); }
    reverse_iterator rbegin() { return reverse_iterator(end()); }
    reverse_iterator rend() { return reverse_iterator(begin()); }
    const_reverse_iterator rbegin() const { return const_reverse_iterator(end()); }
    const_reverse_iterator rend() const { return const_reverse_iterator(begin()); }
    GenCode& operator[](std::size_t k) { return data()[k]; }
    GenCode operator[](std::size_t k) const { return data()[k]; }
    GenCode back() const { return data()[size() - 1]; }

    void reserve(std::size_t n) {
        if (n > kInline) spill(n);
    }
    void clear() {
        n_ = 0;
        big_ = false;
        heap_.clear();
    }
    void push_back(GenCode g) {
        if (!big_ && n_ < kInline) {
            inl_[n_++] = g;
            return;
        }
        spill(size() + 1);
        heap_.push_back(g);
    }
    void pop_back() {
        if (big_)
            heap_.pop_back();
        else
            --n_;
    }
    iterator insert(const_iterator pos, GenCode g) {
        const std::size_t at = pos - begin();
        push_back(g);
        std::rotate(begin() + at, end() - 1, end());
        return begin() + at;
    }
    template <class It>
    iterator insert(const_iterator pos, It first, It last) {
        const std::size_t at = pos - begin(), old = size();
        for (; first != last; ++first) push_back(*first);
        std::rotate(begin() + at, begin() + old, end());
        return begin() + at;
    }
    template <class It>
    void assign(It first, It last) {
        clear();
        for (; first != last; ++first) push_back(*first);
    }

    friend bool operator==(const CodeVec& a, const CodeVec& b) {
        return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
    }
    friend bool operator<(const CodeVec& a, const CodeVec& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    void spill(std::size_t want) {
        if (big_) return;
        heap_.reserve(std::max(want, 2 * kInline));
        heap_.assign(inl_.begin(), inl_.begin() + n_);
        big_ = true;
    }

    std::array<GenCode, kInline> inl_{};
    std::uint8_t n_ = 0;
    bool big_ = false;
    std::vector<GenCode> heap_;
};

// Sorted list of generator codes; repeats encode exponents.
struct Monomial {
    CodeVec codes;

    bool empty() const { return codes.empty(); }
    std::size_t size() const { return codes.size(); }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.codes == b.codes; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.codes.size() != b.codes.size()) return a.codes.size() < b.codes.size();
        return a.codes < b.codes;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (GenCode c : m.codes) {
            h ^= c + 1u;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Finite linear combination of PBW monomials with exact coefficients.
class Element {
public:
    using Map = std::unordered_map<Monomial, Rational, MonomialHash>;

    Element() = default;
    static Element scalar(const Rational& c) {
        Element e;
        e.add(Monomial{}, c);
        return e;
    }
    static Element monomial(Monomial m, const Rational& c = 1) {
        Element e;
        e.add(std::move(m), c);
        return e;
    }

    void add(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add(Monomial&& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_scaled(const Element& o, const Rational& c) {
        if (c.is_zero()) return;
        for (const auto& [m, v] : o.terms_) add(m, v * c);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial{}); }
    bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.count(Monomial{})); }

    // Terms sorted by monomial order (length first, then codes).
    std::vector<std::pair<Monomial, Rational>> sorted_terms() const {
        std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }

    Element& operator+=(const Element& o) {
        add_scaled(o, 1);
        return *this;
    }
    Element& operator-=(const Element& o) {
        add_scaled(o, -1);
        return *this;
    }
    Element& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Rational(-1); }
    friend Element operator*(Element a, const Rational& c) { return a *= c; }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    Map terms_;
};

// U(gl(M|N)) with a PBW order on matrix units. Each basis index carries a
// column number; units e_{ij} with col(i) <= col(j) come first, the rest
// after, each group ordered lexicographically on (i, j).
class SuperAlgebra {
public:
    SuperAlgebra(int M, int N, std::vector<int> columns = {})
        : M_(M), N_(N), cols_(std::move(columns)), uid_(next_uid()) {
        if (M < 0 || N < 0 || M + N == 0) throw std::invalid_argument("gl(M|N) needs M+N > 0");
        const int d = M + N;
        if (cols_.empty()) cols_.assign(d, 1);
        if (static_cast<int>(cols_.size()) != d) throw std::invalid_argument("column list has wrong length");
        std::vector<std::pair<int, int>> upper, lower;
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) (cols_[p] <= cols_[q] ? upper : lower).emplace_back(p, q);
        code_of_.assign(d * d, 0);
        for (auto* group : {&upper, &lower})
            for (auto [p, q] : *group) {
                code_of_[p * d + q] = static_cast<GenCode>(pairs_.size());
                pairs_.emplace_back(p, q);
            }
        upper_count_ = static_cast<int>(upper.size());
        parity_.resize(pairs_.size());
        degree_.resize(pairs_.size());
        for (std::size_t c = 0; c < pairs_.size(); ++c) {
            auto [p, q] = pairs_[c];
            parity_[c] = static_cast<std::uint8_t>((pos_parity(p) + pos_parity(q)) & 1);
            degree_[c] = cols_[q] - cols_[p] + 1;
        }
        brackets_.resize(pairs_.size() * pairs_.size());
        for (std::size_t a = 0; a < pairs_.size(); ++a)
            for (std::size_t b = 0; b < pairs_.size(); ++b) brackets_[a * pairs_.size() + b] = compute_bracket(a, b);
    }

    int M() const { return M_; }
    int N() const { return N_; }
    int dim() const { return M_ + N_; }
    std::size_t uid() const { return uid_; }
    std::size_t generator_count() const { return pairs_.size(); }
    int column_of_position(int p) const { return cols_[p]; }

    int position(const BasisIndex& i) const {
        if (i.ordinal < 1 || i.ordinal > (i.barred ? M_ : N_))
            throw std::out_of_range("basis index out of range: " + i.str());
        return i.barred ? i.ordinal - 1 : M_ + i.ordinal - 1;
    }
    BasisIndex index_at(int p) const { return p < M_ ? BasisIndex::bar(p + 1) : BasisIndex::plain(p - M_ + 1); }
    int pos_parity(int p) const { return p < M_ ? 0 : 1; }

    GenCode code(int p, int q) const { return code_of_[p * dim() + q]; }
    GenCode code(const GeneratorId& g) const { return code(position(g.row), position(g.col)); }
    GeneratorId generator(GenCode c) const { return {index_at(pairs_[c].first), index_at(pairs_[c].second)}; }
    std::pair<int, int> positions(GenCode c) const { return pairs_[c]; }
    int parity(GenCode c) const { return parity_[c]; }
    int degree(GenCode c) const { return degree_[c]; }
    bool in_lower(GenCode c) const { return c >= upper_count_; }

    int parity(const Monomial& m) const {
        int s = 0;
        for (GenCode c : m.codes) s += parity_[c];
        return s & 1;
    }
    int degree(const Monomial& m) const {
        int s = 0;
        for (GenCode c : m.codes) s += degree_[c];
        return s;
    }

    Element unit(int p, int q, const Rational& c = 1) const { return Element::monomial(Monomial{{code(p, q)}}, c); }
    Element unit(const GeneratorId& g, const Rational& c = 1) const {
        return Element::monomial(Monomial{{code(g)}}, c);
    }

    // [e_a, e_b] as a linear combination of units.
    const std::vector<std::pair<GenCode, int>>& bracket_codes(GenCode a, GenCode b) const {
        return brackets_[a * pairs_.size() + b];
    }
    Element bracket_basis(const GeneratorId& a, const GeneratorId& b) const {
        Element out;
        for (auto [c, s] : bracket_codes(code(a), code(b))) out.add(Monomial{{c}}, s);
        return out;
    }

    Element multiply(const Element& x, const Element& y, const StopFn& stop = {}) const {
        Element out;
        for (const auto& [v, cv] : y.terms()) {
            if (stop && stop()) throw Interrupted();
            for (const auto& [u, cu] : x.terms()) accumulate(u.codes, v.codes.data(), v.codes.size(), cu * cv, out);
        }
        return out;
    }

    Element right_mul(const Element& x, GenCode g) const {
        Element out;
        for (const auto& [u, cu] : x.terms()) accumulate(u.codes, &g, 1, cu, out);
        return out;
    }

    // Product of an arbitrary word of units, normalized.
    Element word(const std::vector<GenCode>& w, const Rational& c = 1) const {
        Element out;
        accumulate(CodeVec{}, w.data(), w.size(), c, out);
        return out;
    }

    Element normalize(const Element& x) const {
        Element out;
        for (const auto& [m, c] : x.terms()) accumulate(CodeVec{}, m.codes.data(), m.codes.size(), c, out);
        return out;
    }

    // Splits x into even and odd parts.
    std::pair<Element, Element> split_parity(const Element& x) const {
        Element ev, od;
        for (const auto& [m, c] : x.terms()) (parity(m) ? od : ev).add(m, c);
        return {ev, od};
    }

    // Supercommutator, extended bilinearly over parity components.
    Element bracket(const Element& x, const Element& y, const StopFn& stop = {}) const {
        auto [x0, x1] = split_parity(x);
        auto [y0, y1] = split_parity(y);
        Element out;
        auto part = [&](const Element& a, const Element& b, int sign) {
            if (a.is_zero() || b.is_zero()) return;
            out += multiply(a, b, stop);
            out.add_scaled(multiply(b, a, stop), -sign);
        };
        part(x0, y0, 1);
        part(x0, y1, 1);
        part(x1, y0, 1);
        part(x1, y1, -1);
        return out;
    }

    int kazhdan_degree(const Element& x) const {
        int d = 0;
        for (const auto& [m, c] : x.terms()) d = std::max(d, degree(m));
        return d;
    }

private:
    static std::size_t next_uid() {
        static std::atomic<std::size_t> counter{0};
        return ++counter;
    }

    std::vector<std::pair<GenCode, int>> compute_bracket(std::size_t a, std::size_t b) const {
        auto [i, j] = pairs_[a];
        auto [h, k] = pairs_[b];
        std::vector<std::pair<GenCode, int>> out;
        int sign = ((pos_parity(i) + pos_parity(j)) * (pos_parity(h) + pos_parity(k))) % 2 ? -1 : 1;
        if (h == j) out.emplace_back(code(i, k), 1);
        if (i == k) {
            GenCode c = code(h, j);
            auto it = std::find_if(out.begin(), out.end(), [c](auto& t) { return t.first == c; });
            if (it != out.end()) {
                it->second -= sign;
                if (it->second == 0) out.erase(it);
            } else {
                out.emplace_back(c, -sign);
            }
        }
        return out;
    }

    // Adds c * u * w to out, where u is a normal-form monomial and w any word.
    // Each letter of w is slid leftwards into place; a nonzero bracket with a
    // unit it passes spawns a branch carrying that bracket instead.
    void accumulate(const CodeVec& u, const GenCode* w, std::size_t wn, const Rational& c, Element& out) const {
        struct State {
            CodeVec mono;
            CodeVec pending;  // letters still to insert, next one last
            long long k;
        };
        thread_local std::vector<State> stack;
        stack.clear();
        stack.push_back({u, CodeVec(std::make_reverse_iterator(w + wn), std::make_reverse_iterator(w)), 1});
        while (!stack.empty()) {
            State st = std::move(stack.back());
            stack.pop_back();
            bool dead = false;
            while (!st.pending.empty() && !dead) {
                const GenCode g = st.pending.back();
                st.pending.pop_back();
                std::size_t pos = st.mono.size();
                while (pos > 0) {
                    const GenCode prev = st.mono[pos - 1];
                    if (prev < g) break;
                    if (prev == g) {
                        dead = parity_[g] != 0;  // odd units square to zero
                        break;
                    }
                    for (auto [b, sgn] : bracket_codes(prev, g)) {
                        State br;
                        br.mono.assign(st.mono.begin(), st.mono.begin() + (pos - 1));
                        br.pending = st.pending;
                        br.pending.insert(br.pending.end(), st.mono.rbegin(), st.mono.rend() - pos);
                        br.pending.push_back(b);
                        br.k = st.k * sgn;
                        stack.push_back(std::move(br));
                    }
                    if (parity_[prev] && parity_[g]) st.k = -st.k;
                    --pos;
                }
                if (!dead) st.mono.insert(st.mono.begin() + pos, g);
            }
            if (dead) continue;
            if (st.k == 1)
                out.add(Monomial{std::move(st.mono)}, c);
            else if (st.k == -1)
                out.add(Monomial{std::move(st.mono)}, -c);
            else
                out.add(Monomial{std::move(st.mono)}, c * Rational(st.k));
        }
    }

    int M_, N_;
    std::vector<int> cols_;
    std::size_t uid_;
    std::vector<GenCode> code_of_;
    std::vector<std::pair<int, int>> pairs_;
    int upper_count_ = 0;
    std::vector<std::uint8_t> parity_;
    std::vector<int> degree_;
    std::vector<std::vector<std::pair<GenCode, int>>> brackets_;
};

}  // namespace wyang
